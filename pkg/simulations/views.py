import logging
from pathlib import Path

from django.http import FileResponse
from django.shortcuts import get_object_or_404
from rest_framework import permissions, status
from rest_framework.views import APIView

from utils.response_utils import ResponseMixin

from .models import SimulationRun
from .serializers import SimulationRunCreateSerializer, SimulationRunSerializer
from .tasks import execute_simulation_run

logger = logging.getLogger(__name__)


class SimulationRunListView(APIView, ResponseMixin):
	permission_classes = [permissions.AllowAny]

	def get(self, request):
		"""
		List simulation runs, newest first.
		Optional ``status`` and ``kind`` query parameters narrow the list.
		"""
		runs = SimulationRun.objects.all()

		status_filter = request.query_params.get('status')
		if status_filter:
			runs = runs.filter(status=status_filter)

		kind_filter = request.query_params.get('kind')
		if kind_filter:
			runs = runs.filter(kind=kind_filter)

		return self.success_response(
			message="Simulation runs retrieved successfully",
			data={
				'runs': SimulationRunSerializer(runs, many=True).data,
				'count': runs.count(),
				'filters_applied': {
					'status': status_filter,
					'kind': kind_filter,
				}
			}
		)

	def post(self, request):
		"""Create a run and queue it on the simulations worker."""
		serializer = SimulationRunCreateSerializer(data=request.data)
		if not serializer.is_valid():
			return self.validation_error_response(errors=serializer.errors)

		run = serializer.save()
		try:
			execute_simulation_run.delay(run_id=str(run.id))
		except Exception as e:
			logger.error(f"Could not queue simulation run {run.id}: {e}")
			run.status = SimulationRun.Status.FAILED
			run.error = f"queueing failed: {e}"
			run.save(update_fields=["status", "error", "updated_at"])
			return self.error_response(
				message="Failed to queue simulation run",
				status_code=status.HTTP_503_SERVICE_UNAVAILABLE,
				error_detail=str(e)
			)

		logger.info(f"Queued {run.kind} simulation run {run.id}")
		return self.accepted_response(
			message="Simulation run queued",
			data=SimulationRunSerializer(run).data,
			run_id=str(run.id)
		)


class SimulationRunDetailView(APIView, ResponseMixin):
	permission_classes = [permissions.AllowAny]

	def get(self, request, run_id: str):
		run = get_object_or_404(SimulationRun, id=run_id)
		return self.success_response(
			message="Simulation run retrieved successfully",
			data=SimulationRunSerializer(run).data
		)

	def delete(self, request, run_id: str):
		run = get_object_or_404(SimulationRun, id=run_id)
		if run.status == SimulationRun.Status.RUNNING:
			return self.conflict_response(message="Cannot delete a running simulation")
		if run.result_path:
			Path(run.result_path).unlink(missing_ok=True)
		run.delete()
		return self.success_response(message="Simulation run deleted")


class SimulationRunResultView(APIView, ResponseMixin):
	permission_classes = [permissions.AllowAny]

	def get(self, request, run_id: str):
		"""Download the CSV of a completed run."""
		run = get_object_or_404(SimulationRun, id=run_id)
		if run.status != SimulationRun.Status.COMPLETED:
			return self.conflict_response(
				message="Simulation run has no result yet",
				error_detail=f"status is {run.status}"
			)

		path = Path(run.result_path)
		if not path.is_file():
			return self.not_found_response(
				message="Result file is missing",
				error_detail=str(path)
			)
		return FileResponse(path.open('rb'), as_attachment=True, filename=path.name, content_type='text/csv')
