from djscc.src.kernels import reference_kernel_weights, save_kernel_weights

from ._base import SimulationCommand


class Command(SimulationCommand):
    help = 'Write the shipped reference kernel weights (identity CVIE plus reference DWA) to a weight file'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--out', type=str, default='reference_weights.djsw')
        parser.add_argument('--channels', type=int, default=2)
        parser.add_argument('--kernel-size', type=int, default=3)

    def run(self, options):
        weights = reference_kernel_weights(channels=options['channels'], kernel_size=options['kernel_size'])
        save_kernel_weights(weights, options['out'])
        self.say(f"Wrote {weights.parameter_count()} parameters to {options['out']}", self.style.SUCCESS)
