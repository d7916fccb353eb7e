import logging

from rest_framework.views import exception_handler
from rest_framework.exceptions import ValidationError, NotFound, MethodNotAllowed
from django.core.exceptions import ObjectDoesNotExist
from django.http import Http404
from pydantic import ValidationError as PydanticValidationError

from djscc.src.exceptions import DjsccError
from .response_utils import StandardResponse

logger = logging.getLogger(__name__)


def _first_message(detail) -> str:
    """Dig the first human-readable message out of a DRF error detail."""
    while isinstance(detail, (dict, list)) and detail:
        detail = next(iter(detail.values())) if isinstance(detail, dict) else detail[0]
    return str(detail) if detail else "Invalid input"


def custom_exception_handler(exc, context):
    """
    Custom exception handler for DRF that returns standardized error responses.
    Exception types are checked before falling back to DRF's own response.
    """
    # Let DRF's default handler process the exception first.
    response = exception_handler(exc, context)

    if isinstance(exc, ValidationError):
        return StandardResponse.validation_error(
            message=_first_message(exc.detail),
            errors=exc.detail
        )

    # Simulator and config validation errors surfacing outside a serializer.
    if isinstance(exc, PydanticValidationError):
        return StandardResponse.validation_error(
            message="Invalid experiment configuration",
            errors=[error['msg'] for error in exc.errors()]
        )

    if isinstance(exc, DjsccError):
        return StandardResponse.error(
            message="Simulation request rejected",
            error_detail=str(exc)
        )

    if isinstance(exc, (NotFound, Http404, ObjectDoesNotExist)):
        return StandardResponse.not_found(error_detail=str(exc))

    if isinstance(exc, MethodNotAllowed):
        return StandardResponse.error(
            message="Method not allowed",
            status_code=response.status_code,
            error_detail=str(exc)
        )

    # Fallback for any other exceptions handled by DRF
    if response is not None:
        if response.status_code >= 500:
            return StandardResponse.server_error(error_detail="A server error occurred.")
        detail = response.data.get('detail', "An error occurred.") if isinstance(response.data, dict) else response.data
        return StandardResponse.error(
            message="Request failed",
            status_code=response.status_code,
            error_detail=str(detail)
        )

    # If response is None, it's an unhandled server error.
    logger.exception("Unhandled API error", exc_info=exc)
    return StandardResponse.server_error(
        message="Unexpected server error",
        error_detail="An unexpected server error occurred."
    )
