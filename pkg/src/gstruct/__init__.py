"""Exact exterior-algebra toolkit for G2-structures on 7-frames, induced
SU(3)-structures on hypersurfaces, and intrinsic-torsion classification."""

from .backend import EXACT, ExactBackend, FloatBackend
from .bilinear import Bilinear, bilinear_split, iall, islot
from .forms import Form, basis_vector, contract, hodge, inner, vector, wedge
from .frames import FrameSpace
from .framegeom import (CoframeDGA, Connection, exterior_d, koszul, nabla_phi,
                        slice_hypersurface)
from .g2 import (G2Structure, alpha_from_a, build_g2, cross, dphi_from_a,
                 dstarphi_from_a, g2_classify, g2_project, rbar_from_derivatives,
                 rbar_of, xi_g2)
from .pipeline import (AmbientData, InducedData, classify_hypersurface,
                       induce_structure, rrb)
from .su3 import (SU3Structure, SU3Torsion, alpha6_from_a, build_su3, d45_part,
                  domega_from_a, dpsi_xi_from_a, dstar_omega, r_of, su3_classify,
                  su3_project, torsion_from_exterior, xi_su3)
from .tables import table_crosscheck

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
