from typing import Any, Dict, Optional

from rest_framework import status
from rest_framework.response import Response


class StandardResponse:
    """
    JSON envelope shared by every API view and the exception handler.

    Bodies always carry ``status`` and ``message``; ``data``, ``errors`` and
    ``error`` are present only when set, and extra keyword fields (``run_id``)
    are merged at the top level.
    """

    @staticmethod
    def _build(
        state: str,
        message: str,
        status_code: int,
        data: Any = None,
        errors: Any = None,
        error_detail: Optional[str] = None,
        extra_fields: Optional[Dict[str, Any]] = None
    ) -> Response:
        body = {"status": state, "message": message}
        optional = {"data": data, "errors": errors, "error": error_detail}
        body.update({key: value for key, value in optional.items() if value is not None})
        body.update(extra_fields or {})
        return Response(body, status=status_code)

    @staticmethod
    def success(message: str, data: Any = None, status_code: int = status.HTTP_200_OK,
                extra_fields: Optional[Dict[str, Any]] = None) -> Response:
        return StandardResponse._build("success", message, status_code, data=data, extra_fields=extra_fields)

    @staticmethod
    def accepted(message: str, data: Any = None, extra_fields: Optional[Dict[str, Any]] = None) -> Response:
        """202 for work handed to the queue."""
        return StandardResponse._build(
            "accepted", message, status.HTTP_202_ACCEPTED, data=data, extra_fields=extra_fields
        )

    @staticmethod
    def error(message: str, status_code: int = status.HTTP_400_BAD_REQUEST, errors: Any = None,
              error_detail: Optional[str] = None, extra_fields: Optional[Dict[str, Any]] = None) -> Response:
        """``errors`` holds field-level serializer errors, ``error_detail`` a single reason."""
        return StandardResponse._build(
            "error", message, status_code, errors=errors, error_detail=error_detail, extra_fields=extra_fields
        )

    @staticmethod
    def validation_error(message: str = "Validation failed", errors: Any = None) -> Response:
        return StandardResponse.error(message, status.HTTP_400_BAD_REQUEST, errors=errors)

    @staticmethod
    def not_found(message: str = "Resource not found", error_detail: Optional[str] = None) -> Response:
        return StandardResponse.error(message, status.HTTP_404_NOT_FOUND, error_detail=error_detail)

    @staticmethod
    def conflict(message: str, error_detail: Optional[str] = None) -> Response:
        return StandardResponse.error(message, status.HTTP_409_CONFLICT, error_detail=error_detail)

    @staticmethod
    def server_error(message: str = "Internal server error", error_detail: Optional[str] = None) -> Response:
        return StandardResponse.error(message, status.HTTP_500_INTERNAL_SERVER_ERROR, error_detail=error_detail)


class ResponseMixin:
    """APIView shortcuts onto StandardResponse; keyword extras become top-level fields."""

    def success_response(self, message: str, data: Any = None,
                         status_code: int = status.HTTP_200_OK, **extra_fields) -> Response:
        return StandardResponse.success(message, data, status_code, extra_fields=extra_fields)

    def accepted_response(self, message: str, data: Any = None, **extra_fields) -> Response:
        return StandardResponse.accepted(message, data, extra_fields=extra_fields)

    def error_response(self, message: str, status_code: int = status.HTTP_400_BAD_REQUEST,
                       errors: Any = None, error_detail: Optional[str] = None, **extra_fields) -> Response:
        return StandardResponse.error(message, status_code, errors, error_detail, extra_fields=extra_fields)

    def validation_error_response(self, errors: Any = None, message: str = "Validation failed") -> Response:
        return StandardResponse.validation_error(message, errors)

    def not_found_response(self, message: str = "Resource not found",
                           error_detail: Optional[str] = None) -> Response:
        return StandardResponse.not_found(message, error_detail)

    def conflict_response(self, message: str, error_detail: Optional[str] = None) -> Response:
        return StandardResponse.conflict(message, error_detail)
