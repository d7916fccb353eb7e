from django.apps import AppConfig


class DjsccConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'djscc'
    verbose_name = 'Distributed JSCC Simulator'
