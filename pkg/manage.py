#!/usr/bin/env python
"""
Command-line entry point: run_experiment, print_constants, selftest, dump_tree
and the stock Django commands.
"""

import os
import sys

if __name__ == '__main__':
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'branching_extremes.settings.local')
    sys.path.append(os.path.abspath(os.path.dirname(__file__)))
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Install requirements/base.txt into the active environment."
        ) from exc
    execute_from_command_line(sys.argv)
