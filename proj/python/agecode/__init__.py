"""Age-optimal codeword design for selective encoding.

Thin package wrapper over the compiled module: closed-form average age,
Lambert-W optimal codeword lengths, k and alpha sweeps, and the renewal
simulator.
"""

try:
    from ._agecode import *  # noqa: F401,F403
    from ._agecode import __doc__ as _native_doc  # noqa: F401
except ImportError:
    # In-tree test runs put the freshly built module on sys.path directly
    # instead of installing it into the package.
    from _agecode import *  # noqa: F401,F403
