#pragma once

#include <string>

#include "gma/net.hpp"

namespace gma {

/// Model file: {version, name?, hilbert_dim, wedge_system {labels, order,
/// complement, reflections}, algebras {label: [generator, ...]}, omega0,
/// symmetries?, translation_generators?, wedge_geometry?}. Matrices are
/// row-major nested arrays of [re, im] pairs, vectors arrays of pairs.
/// order: [[a, b], ...] meaning a inside b; complement: [[a, a'], ...];
/// reflections: {w0: [[w, image], ...]}.
///
/// Throws ValidationError whose message starts with the field path.
ToyNet parse_model(const std::string& text);

/// Canonical form: labels in system order, algebra bases as generators.
std::string serialize_model(const ToyNet& net);

inline constexpr int kModelVersion = 1;

} // namespace gma
