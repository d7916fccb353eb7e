from ._base import ExperimentCommand


class Command(ExperimentCommand):
    help = 'Mean squared cosine similarity of the received views over an SNR grid'
    kind = 'scs_sweep'
