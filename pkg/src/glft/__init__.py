"""glft - generalized Legendre-Fenchel transforms.

Conjugation engines, affine deformations, the generalized transform and
the divergences of dually flat spaces, with numeric verification suites
and a CLI that writes CSV / JSON artifacts.
"""

__version__ = "1.0.0"
