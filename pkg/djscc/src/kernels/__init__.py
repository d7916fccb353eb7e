from .crossview import (
    cam_reference,
    ccf,
    consistency_branch,
    conv2d,
    cvie,
    dwa,
    project_qkv,
    shift,
)
from .weights import (
    conv_equivalent_weights,
    load_kernel_weights,
    random_kernel_weights,
    read_weight_file,
    reference_dwa_weights,
    reference_kernel_weights,
    save_kernel_weights,
    write_weight_file,
)

__all__ = [
    'cam_reference',
    'ccf',
    'consistency_branch',
    'conv2d',
    'conv_equivalent_weights',
    'cvie',
    'dwa',
    'load_kernel_weights',
    'project_qkv',
    'random_kernel_weights',
    'read_weight_file',
    'reference_dwa_weights',
    'reference_kernel_weights',
    'save_kernel_weights',
    'shift',
    'write_weight_file',
]
