from ._base import ExperimentCommand


class Command(ExperimentCommand):
    help = 'Decode MSE and correlation against pilot count and synthetic CSI error'
    kind = 'csi_sweep'
