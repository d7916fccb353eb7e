from django.urls import path
from .views import SimulationRunDetailView, SimulationRunListView, SimulationRunResultView

app_name = 'simulations'

urlpatterns = [
	path('runs/', SimulationRunListView.as_view(), name='run-list'),
	path('runs/<uuid:run_id>/', SimulationRunDetailView.as_view(), name='run-detail'),
	path('runs/<uuid:run_id>/result/', SimulationRunResultView.as_view(), name='run-result'),
]
