from ._base import ExperimentCommand


class Command(ExperimentCommand):
    help = 'Run the toy distributed pipeline and write one CSV row per trial'
    kind = 'pipeline'
