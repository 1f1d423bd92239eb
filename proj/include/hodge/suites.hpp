#pragma once

#include "hodge/config.hpp"

namespace hodge {

// Fixed verification batteries over the built-in corpus (deterministic).
void checks_hodge_square(Report& rep);                     // J^2 = delta on generated spaces
void checks_hodge_identities(Report& rep);                 // the six pairing identities
void checks_reference_matrices(Report& rep);                   // 3D and hyperbolic-plane matrices
void checks_su4_f4(Report& rep, std::size_t cap);          // SU4(F4) closure and its image
void checks_finite_orth_f3(Report& rep, std::size_t cap);  // the q4^- battery over F3
void checks_split_reductions(Report& rep);                 // Wp / Wz reductions and g^o tables
void checks_char2_octonion(Report& rep);                   // psi isometry over F4|F2
void checks_geometry(Report& rep, std::size_t cap);        // polarity, fibers, absolute points
void checks_eichler_images(Report& rep);                   // predicted Eichler/transvection images
void checks_rational_examples(Report& rep);                // the two rational forms
void checks_su4_f9_long(Report& rep, std::size_t cap);     // gated large closure

// Configuration-dependent rows.
void checks_config_hodge(Report& rep, const RunConfig& cfg);
void checks_config_classify(Report& rep, const RunConfig& cfg);
void checks_config_split(Report& rep, const RunConfig& cfg);
void checks_config_geometry(Report& rep, const RunConfig& cfg);
void checks_config_groups(Report& rep, const RunConfig& cfg);

} // namespace hodge
