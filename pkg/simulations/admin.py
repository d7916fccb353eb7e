from django.contrib import admin

from .models import SimulationRun


@admin.register(SimulationRun)
class SimulationRunAdmin(admin.ModelAdmin):
    list_display = ('id', 'kind', 'status', 'seed', 'trials', 'row_count', 'created_at')
    list_filter = ('kind', 'status')
    readonly_fields = ('created_at', 'updated_at', 'started_at', 'finished_at')
