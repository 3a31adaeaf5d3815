"""Finite quantale-valued relation categories: algebras, spectra, topologies,
and contextuality verdicts, all machine-checked at desk scale."""

from qspec.quantale import (
    AxiomReport, Quantale, QuantaleError, RigHom, ZdfRequiredError,
    builtin_quantale, endomorphisms, is_zdf, load_quantale, load_quantale_file,
    parse_quantale_tag, quantale_to_doc, rig_homs, two_embedding,
    verify_quantale, zdf_collapse, zdf_witness,
)
from qspec.relations import (
    FiniteSet, QRel, SupportPair, add, add_via_biproduct, all_relations,
    blocks, carrier, compose, dagger, diag_rel, identity_rel, is_normal,
    reassemble, rel, rel_from_doc, rel_to_doc, scalar_mul,
    scalar_mul_via_tensor, scalar_rel, subset_idempotent, support, tensor,
    zero_rel,
)
from qspec.subalgebra import (
    AlgebraPoset, Decomposition, EnumerationBoundExceeded, InvariantViolation,
    MixedAmbientError, Subsemialgebra, close, commutant, diagonal_algebra,
    direct_sum, enumerate_vn, is_von_neumann, primitive_idempotents,
    restrict_component, subunital_idempotents, trivial_algebra,
    validate_decomposition,
)
from qspec.spectra import (
    Character, PrimeIdeal, SpectrumSet, character_from_prime,
    character_from_two, character_kernel, characters_to_two, gelfand_spectrum,
    is_character, is_prime_kstar_ideal, prime_spectrum, restrict_character,
    restrict_point, restrict_prime,
)
from qspec.contextuality import (
    Presheaf, Section, Verdict, build_presheaf, canonical_section,
    global_sections, is_natural, ks_verdict, section_element,
)
from qspec.zariski import (
    FiniteTopology, SeparationReport, check_continuity, is_homeomorphism,
    kolmogorov_quotient, separation_report, verify_quotient_xi,
    zariski_topology,
)

__version__ = "0.1.0"
