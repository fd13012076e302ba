""" Exceptions raised by the tree_sim app. """


class TreeSimulationError(Exception):
    """
    Base class for simulation failures.
    """

    def __init__(self, message):
        super().__init__(message)
        self.message = message


class PopulationCapExceeded(TreeSimulationError):
    """
    A tree grew past the configured particle cap before reaching the horizon.
    """

    def __init__(self, cap, t):
        super().__init__(f'Tree exceeded {cap} particles before horizon t={t}.')
        self.cap = cap
        self.t = t
