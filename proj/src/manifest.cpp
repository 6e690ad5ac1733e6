#include "dg/manifest.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "dg/parse.hpp"

namespace dg {

namespace {

using nlohmann::json;

Rational rational_from_json(const json& v, const std::string& ptr) {
    try {
        if (v.is_number_integer()) return Rational(v.get<long long>());
        if (v.is_string()) {
            std::string s = v.get<std::string>();
            auto slash = s.find('/');
            if (slash == std::string::npos) return Rational(Integer(s));
            Integer num(s.substr(0, slash));
            Integer den(s.substr(slash + 1));
            if (den == 0) throw ManifestError(ptr, "zero denominator");
            return Rational(num, den);
        }
    } catch (const ManifestError&) {
        throw;
    } catch (const std::exception&) {
        throw ManifestError(ptr, "malformed rational");
    }
    throw ManifestError(ptr, "expected integer or rational string");
}

std::vector<Coordinate> coordinates_from_json(const json& arr, const std::string& ptr) {
    if (!arr.is_array() || arr.empty()) throw ManifestError(ptr, "expected nonempty array");
    std::vector<Coordinate> coords;
    for (size_t i = 0; i < arr.size(); ++i) {
        std::string here = ptr + "/" + std::to_string(i);
        const json& c = arr[i];
        if (!c.is_object() || !c.contains("name") || !c.contains("degree"))
            throw ManifestError(here, "expected {name, degree}");
        if (!c["name"].is_string()) throw ManifestError(here + "/name", "expected string");
        if (!c["degree"].is_number_integer())
            throw ManifestError(here + "/degree", "expected integer");
        coords.push_back({c["name"].get<std::string>(), c["degree"].get<int>()});
    }
    return coords;
}

int coord_index(const Context& ctx, const std::string& name, const std::string& ptr) {
    auto idx = ctx.index_of(name);
    if (!idx) throw ManifestError(ptr, "unknown coordinate '" + name + "'");
    return *idx;
}

std::vector<std::string> split_key(const std::string& key, size_t parts, const std::string& ptr) {
    std::vector<std::string> out;
    std::stringstream ss(key);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    if (out.size() != parts)
        throw ManifestError(ptr, "key '" + key + "' must have " + std::to_string(parts) +
                                     " comma-separated names");
    return out;
}

Polynomial parse_expr(const std::string& text, const Context& ctx, const std::string& ptr) {
    try {
        return parse_polynomial(text, ctx);
    } catch (const ParseError& e) {
        throw ManifestError(ptr, std::string("expression error: ") + e.what());
    }
}

Manifest build_from_json(const json& doc, const std::string& source) {
    if (!doc.is_object()) throw ManifestError("", "manifest must be a JSON object");
    Manifest out;
    out.source = source;

    bool has_coords = doc.contains("coordinates") || doc.contains("Q");
    bool has_lie = doc.contains("lie_algebra");
    if (has_coords == has_lie)
        throw ManifestError("", "exactly one of coordinates+Q or lie_algebra must be present");

    if (has_lie) {
        const json& lj = doc["lie_algebra"];
        if (!lj.is_object() || !lj.contains("dim"))
            throw ManifestError("/lie_algebra", "expected {dim, structure_constants}");
        if (!lj["dim"].is_number_integer() || lj["dim"].get<int>() < 1)
            throw ManifestError("/lie_algebra/dim", "expected positive integer");
        LieAlgebra g(lj["dim"].get<int>());
        if (lj.contains("structure_constants")) {
            const json& sc = lj["structure_constants"];
            if (!sc.is_array()) throw ManifestError("/lie_algebra/structure_constants",
                                                    "expected array of [i,j,k,value]");
            for (size_t t = 0; t < sc.size(); ++t) {
                std::string here = "/lie_algebra/structure_constants/" + std::to_string(t);
                const json& row = sc[t];
                if (!row.is_array() || row.size() != 4)
                    throw ManifestError(here, "expected [i, j, k, value]");
                int i = row[0].get<int>(), j = row[1].get<int>(), k = row[2].get<int>();
                if (i < 1 || j < 1 || k < 1 || i > g.dim() || j > g.dim() || k > g.dim())
                    throw ManifestError(here, "index out of range (1-based)");
                g.set_c(i - 1, j - 1, k - 1, rational_from_json(row[3], here + "/3"));
            }
        }
        out.lie = g;
        out.manifold = ce_manifold_unchecked(g);
    } else {
        if (!doc.contains("coordinates"))
            throw ManifestError("/coordinates", "missing coordinates");
        std::vector<Coordinate> coords = coordinates_from_json(doc["coordinates"], "/coordinates");
        Context ctx;
        try {
            ctx = Context(std::move(coords));
        } catch (const std::exception& e) {
            throw ManifestError("/coordinates", e.what());
        }
        VectorField q(ctx);
        if (doc.contains("Q")) {
            const json& qj = doc["Q"];
            if (!qj.is_object()) throw ManifestError("/Q", "expected object coordinate -> expr");
            for (const auto& [name, expr] : qj.items()) {
                std::string here = "/Q/" + name;
                int k = coord_index(ctx, name, here);
                if (!expr.is_string()) throw ManifestError(here, "expected expression string");
                q.set_coeff(k, parse_expr(expr.get<std::string>(), ctx, here));
            }
        }
        out.manifold = DgManifold{ctx, q};
    }

    const Context& ctx = out.manifold.ctx;

    if (doc.contains("connection")) {
        const json& cj = doc["connection"];
        if (!cj.is_object()) throw ManifestError("/connection", "expected object 'k,i,j' -> expr");
        Connection nabla(ctx);
        for (const auto& [key, expr] : cj.items()) {
            std::string here = "/connection/" + key;
            auto names = split_key(key, 3, here);
            int k = coord_index(ctx, names[0], here);
            int i = coord_index(ctx, names[1], here);
            int j = coord_index(ctx, names[2], here);
            if (!expr.is_string()) throw ManifestError(here, "expected expression string");
            try {
                nabla.set_gamma(i, j, k, parse_expr(expr.get<std::string>(), ctx, here));
            } catch (const std::invalid_argument& e) {
                throw ManifestError(here, e.what());
            }
        }
        out.connection = std::move(nabla);
    }

    if (doc.contains("bundle")) {
        const json& bj = doc["bundle"];
        if (!bj.is_object() || !bj.contains("frame"))
            throw ManifestError("/bundle", "expected {frame, q_matrix[, connection]}");
        Frame frame;
        frame.elements = coordinates_from_json(bj["frame"], "/bundle/frame");
        const int f = frame.size();
        std::vector<Polynomial> q(static_cast<size_t>(f) * f, Polynomial::zero(ctx));
        auto frame_index = [&](const std::string& name, const std::string& ptr) {
            for (int a = 0; a < f; ++a)
                if (frame.name(a) == name) return a;
            throw ManifestError(ptr, "unknown frame element '" + name + "'");
        };
        if (bj.contains("q_matrix")) {
            if (!bj["q_matrix"].is_object())
                throw ManifestError("/bundle/q_matrix", "expected object 'a,b' -> expr");
            for (const auto& [key, expr] : bj["q_matrix"].items()) {
                std::string here = "/bundle/q_matrix/" + key;
                auto names = split_key(key, 2, here);
                int a = frame_index(names[0], here);
                int b = frame_index(names[1], here);
                if (!expr.is_string()) throw ManifestError(here, "expected expression string");
                q[static_cast<size_t>(a) * f + static_cast<size_t>(b)] =
                    parse_expr(expr.get<std::string>(), ctx, here);
            }
        }
        out.bundle = DgVectorBundle(out.manifold, frame, std::move(q));
        if (bj.contains("connection")) {
            if (!bj["connection"].is_object())
                throw ManifestError("/bundle/connection", "expected object 'a,i,b' -> expr");
            std::map<std::tuple<int, int, int>, Polynomial> gamma;
            for (const auto& [key, expr] : bj["connection"].items()) {
                std::string here = "/bundle/connection/" + key;
                auto names = split_key(key, 3, here);
                int a = frame_index(names[0], here);
                int i = coord_index(ctx, names[1], here);
                int b = frame_index(names[2], here);
                if (!expr.is_string()) throw ManifestError(here, "expected expression string");
                gamma[{a, i, b}] = parse_expr(expr.get<std::string>(), ctx, here);
            }
            try {
                out.bundle_connection = BundleConnection(ctx, frame, gamma);
            } catch (const std::invalid_argument& e) {
                throw ManifestError("/bundle/connection", e.what());
            }
        }
    }
    return out;
}

}  // namespace

const Connection& Manifest::connection_or_trivial(Connection& storage) const {
    if (connection) return *connection;
    storage = Connection::trivial(manifold.ctx);
    return storage;
}

Manifest load_manifest_text(const std::string& json_text, const std::string& source) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ManifestError("", std::string("invalid JSON: ") + e.what());
    }
    return build_from_json(doc, source);
}

Manifest load_manifest_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ManifestError("", "cannot open manifest file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_manifest_text(ss.str(), path);
}

Manifest manifest_from_catalog(const std::string& name) {
    LieAlgebra g = LieAlgebra::catalog(name);
    Manifest out;
    out.source = "catalog:" + name;
    out.lie = g;
    out.manifold = ce_manifold_unchecked(g);
    return out;
}

}  // namespace dg
