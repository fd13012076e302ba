""" Exceptions raised by the experiments app. """


class ExperimentConfigError(Exception):
    """
    A config file could not be read or failed validation.

    ``errors`` maps dotted field names (``section.key``) to messages.
    """

    def __init__(self, message, errors=None):
        super().__init__(message)
        self.message = message
        self.errors = errors or {}

    def field_messages(self):
        return [f'{field}: {message}' for field, message in sorted(self.errors.items())]
