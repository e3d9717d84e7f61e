"""Combinatorics of local models: root data, Iwahori-Weyl groups, admissible
sets, lattice-chain point counts, Hecke algebras and classical form types."""

from .errors import CapExceeded, DomainError
from .galois_lattice import (FgAbelianGroup, LatticeWithAction, coinvariants, cyclic_h1,
                             cyclic_h2, kottwitz_pi1, smith_normal_form)
from .root_data import (PinnedAutomorphism, RelativeRootDatum, RootDatum, build_root_datum,
                        dominant_representative, fold, pinned_automorphism, two_rho_pairing)
from .affine_weyl import ExtAffineWeylElement, ExtAffineWeylGroup, make_iwahori_weyl
from .admissible import adm, adm_parahoric, lambda_orbit, point_count_poly
from .lattice_chain import compare_with_admissible, enumerate_gl_points, enumerate_gsp_points
from .hecke import HeckeAlgebra, a_mu_minuscule, inertia_invariant_dim
from .classical_catalog import catalog_list, classify_form, division_order_presentation

__version__ = "0.1.0"
