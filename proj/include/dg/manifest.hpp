#pragma once

#include <optional>
#include <string>

#include "dg/atiyah.hpp"
#include "dg/lie.hpp"

namespace dg {

struct ManifestError : std::runtime_error {
    ManifestError(const std::string& pointer, const std::string& msg)
        : std::runtime_error(pointer + ": " + msg) {}
};

/// Parsed problem instance: a chart with homological field, plus optional
/// connection, bundle and Lie-algebra blocks. Exactly one of coordinates+Q or
/// lie_algebra appears at top level; a lie_algebra block expands to xi1..xin
/// of degree 1 with the Chevalley-Eilenberg field.
struct Manifest {
    std::string source;
    DgManifold manifold;
    std::optional<Connection> connection;
    std::optional<LieAlgebra> lie;
    std::optional<DgVectorBundle> bundle;
    std::optional<BundleConnection> bundle_connection;

    const Connection& connection_or_trivial(Connection& storage) const;
};

Manifest load_manifest_file(const std::string& path);
Manifest load_manifest_text(const std::string& json_text, const std::string& source);
/// abelian(n), solvable2, sl2, heisenberg3.
Manifest manifest_from_catalog(const std::string& name);

}  // namespace dg
