"""Exact para-(co)cyclic modules of left Hopf algebroids with coefficients."""

from .exactlin import QQ, GF, parse_field
from .catalog import CATALOG, entry
from .complexes import (build_B_cocyclic, build_C_cocyclic, build_C_cyclic,
                        cyclic_homology, hochschild_oracle, hopf_galois_chain_iso,
                        quotient_and_phi, simplicial_cohomology, simplicial_homology,
                        tau_inverse_saYD, tor_oracle)

__all__ = ["QQ", "GF", "parse_field", "CATALOG", "entry", "build_B_cocyclic",
           "build_C_cocyclic", "build_C_cyclic", "cyclic_homology", "hochschild_oracle",
           "hopf_galois_chain_iso", "quotient_and_phi", "simplicial_cohomology",
           "simplicial_homology", "tau_inverse_saYD", "tor_oracle"]
