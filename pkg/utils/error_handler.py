"""
Error types and structured error reporting.
"""
import json
import logging
import traceback
from datetime import datetime

logger = logging.getLogger(__name__)

STATUS_OK = 0
STATUS_INTERNAL = 1
STATUS_VALIDATION = 2
STATUS_VERIFICATION = 3


class ShorArithError(Exception):
    """Base class for toolkit errors."""

    status = STATUS_INTERNAL


class ValidationError(ShorArithError, ValueError):
    """A parameter violates a builder, model or command precondition."""

    status = STATUS_VALIDATION


class CircuitError(ShorArithError):
    """A circuit is malformed or cannot be combined or parsed."""

    status = STATUS_VALIDATION


class VerificationError(ShorArithError):
    """A simulated circuit disagreed with its integer oracle."""

    status = STATUS_VERIFICATION


def require(condition: bool, message: str) -> None:
    """Raise ValidationError with message unless condition holds."""
    if not condition:
        raise ValidationError(message)


class ErrorHandler:
    """Turns exceptions into logged, machine-readable error objects."""

    def __init__(self, component):
        """
        Initialize the error handler.

        Args:
            component: Name of the component reporting errors
        """
        self.component = component

    def handle_exception(self, exception, command=None, custom_message=None):
        """
        Handle an exception by logging a structured entry.

        Args:
            exception: The exception that occurred
            command: Verb being executed, if any
            custom_message: Optional custom message to include

        Returns:
            Error response object with an exit status and a JSON-ready body
        """
        stack_trace = traceback.format_exc()

        error_type = type(exception).__name__
        error_message = str(exception)
        timestamp = datetime.now().isoformat()

        log_entry = {
            'timestamp': timestamp,
            'component': self.component,
            'error_type': error_type,
            'error_message': error_message,
            'stack_trace': stack_trace
        }

        if command:
            log_entry['command'] = command

        if custom_message:
            log_entry['custom_message'] = custom_message

        logger.error(json.dumps(log_entry))

        body = {
            'error': error_type,
            'message': error_message,
            'timestamp': timestamp
        }
        if command:
            body['command'] = command
        if custom_message:
            body['detail'] = custom_message

        return {
            'status': self.status_for(exception),
            'body': body
        }

    @staticmethod
    def status_for(exception) -> int:
        """Exit status for an exception."""
        if isinstance(exception, ShorArithError):
            return exception.status
        return STATUS_INTERNAL
