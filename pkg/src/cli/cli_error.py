"""
This module defines the custom exception for command-line usage problems.
"""


class CliError(Exception):
    """
    Custom exception class for invalid command-line input that argparse cannot catch,
    such as unreadable input files.

    Attributes:
        message (str): The error message describing the issue.
    """
    def __init__(self, message):
        super().__init__(message)
        self.message = message
