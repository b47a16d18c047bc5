#include "dbar/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace dbar {

namespace {

cplx complex_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw SpecError(std::string(what) + " must be [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

std::string location(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw SpecError(std::string("bad value for \"") + key + "\"");
    }
}

void dump_impl(const json& j, int indent, int depth, std::string& out) {
    const auto newline = [&](int d) {
        if (indent < 0) return;
        out += '\n';
        out.append(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                newline(depth + 1);
                out += json(it.key()).dump();
                out += indent < 0 ? ":" : ": ";
                dump_impl(it.value(), indent, depth + 1, out);
            }
            newline(depth);
            out += '}';
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += '[';
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ',';
                newline(depth + 1);
                dump_impl(j[i], indent, depth + 1, out);
            }
            newline(depth);
            out += ']';
            return;
        }
        case json::value_t::number_float: {
            const double x = j.get<double>();
            out += std::isfinite(x) ? format_double(x) : std::string("null");
            return;
        }
        default:
            out += j.dump();
    }
}

}  // namespace

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string dump_json(const json& j, int indent) {
    std::string out;
    dump_impl(j, indent, 0, out);
    out += '\n';
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SpecError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw SpecError("cannot write " + path);
    out << text;
    if (!out) throw SpecError("write failed for " + path);
}

// ---------------------------------------------------------------------------

json poly_to_json(const MultiIndexPoly& p) {
    json arr = json::array();
    for (const PolyRecord& r : poly_to_records(p)) {
        arr.push_back({{"a", r.a}, {"b", r.b}, {"re", r.re}, {"im", r.im}});
    }
    return arr;
}

MultiIndexPoly poly_from_json(int n, const json& j) {
    if (!j.is_array()) throw SpecError("a polynomial must be a list of {a, b, re, im} records");
    std::vector<PolyRecord> recs;
    for (const json& r : j) {
        if (!r.is_object() || !r.contains("a") || !r.contains("b")) {
            throw SpecError("polynomial record needs \"a\" and \"b\"");
        }
        PolyRecord rec;
        try {
            rec.a = r.at("a").get<std::vector<int>>();
            rec.b = r.at("b").get<std::vector<int>>();
        } catch (const json::exception&) {
            throw SpecError("exponents must be integer lists");
        }
        rec.re = get_or<double>(r, "re", 0.0);
        rec.im = get_or<double>(r, "im", 0.0);
        recs.push_back(std::move(rec));
    }
    return poly_from_records(n, recs);
}

json domain_to_json(const ProductDomain& dom) {
    json factors = json::array();
    for (const PlanarDomain& d : dom.factors()) {
        if (d.is_disc()) {
            factors.push_back({{"kind", "disc"}, {"center", complex_to_json(d.center())}, {"radius", d.radius()}});
        } else {
            factors.push_back({{"kind", "rectangle"}, {"lo", complex_to_json(d.lo())}, {"hi", complex_to_json(d.hi())}});
        }
    }
    json blocks = json::array();
    const BlockPartition& bp = dom.blocks();
    for (int b = 0; b < bp.block_count(); ++b) {
        json g = json::array();
        for (int c : bp.coords(b)) g.push_back(c + 1);
        blocks.push_back(g);
    }
    return {{"factors", factors}, {"blocks", blocks}};
}

ProductDomain domain_from_json(const json& j) {
    if (!j.is_object() || !j.contains("factors") || !j.at("factors").is_array()) {
        throw SpecError("\"domain\" needs a \"factors\" list");
    }
    std::vector<PlanarDomain> factors;
    for (const json& f : j.at("factors")) {
        const std::string kind = get_or<std::string>(f, "kind", "");
        if (kind == "disc") {
            const cplx c = f.contains("center") ? complex_from_json(f.at("center"), "center") : cplx(0.0, 0.0);
            factors.push_back(PlanarDomain::disc(c, get_or<double>(f, "radius", 1.0)));
        } else if (kind == "rectangle") {
            if (!f.contains("lo") || !f.contains("hi")) throw SpecError("rectangle needs \"lo\" and \"hi\"");
            factors.push_back(PlanarDomain::rectangle(complex_from_json(f.at("lo"), "lo"),
                                                      complex_from_json(f.at("hi"), "hi")));
        } else {
            throw SpecError("unknown factor kind \"" + kind + "\"");
        }
    }
    const int n = static_cast<int>(factors.size());
    if (n < 1 || n > kMaxDim) throw SpecError("number of factors must lie in [1, " + std::to_string(kMaxDim) + "]");
    if (!j.contains("blocks")) return ProductDomain(std::move(factors));
    std::vector<std::vector<int>> groups;
    try {
        groups = j.at("blocks").get<std::vector<std::vector<int>>>();
    } catch (const json::exception&) {
        throw SpecError("\"blocks\" must be a list of integer lists");
    }
    for (auto& g : groups) {
        for (int& c : g) {
            if (c < 1 || c > n) throw SpecError("block coordinate out of range");
            --c;
        }
    }
    return ProductDomain(std::move(factors), BlockPartition::from_groups(groups));
}

ProblemSpec parse_problem(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        std::string msg = e.what();
        const auto cut = msg.find(": ", msg.find("parse error"));
        std::string detail = cut == std::string::npos ? msg : msg.substr(cut + 2);
        throw SpecError("malformed JSON at " + location(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + detail);
    }
    if (!j.is_object()) throw SpecError("problem spec must be a JSON object");
    if (!j.contains("domain")) throw SpecError("problem spec needs \"domain\"");
    if (!j.contains("form")) throw SpecError("problem spec needs \"form\"");

    ProblemSpec spec;
    spec.domain = domain_from_json(j.at("domain"));
    const int n = spec.domain.dimension();
    const json& form = j.at("form");
    if (!form.is_object() || !form.contains("components") || !form.at("components").is_array()) {
        throw SpecError("\"form\" needs a \"components\" list");
    }
    const json& comps = form.at("components");
    if (static_cast<int>(comps.size()) != n) {
        throw SpecError("form has " + std::to_string(comps.size()) + " components for " + std::to_string(n) +
                        " factors");
    }
    std::vector<MultiIndexPoly> cs;
    for (const json& c : comps) cs.push_back(poly_from_json(n, c));
    spec.form = OneForm(std::move(cs), spec.domain.blocks());
    spec.mode = parse_eval_path(get_or<std::string>(j, "mode", "exact"));
    spec.grid = get_or<int>(j, "grid", spec.grid);
    spec.quad = get_or<int>(j, "quad", spec.quad);
    if (spec.grid < 1) throw SpecError("grid must be positive");
    if (spec.quad < 2) throw SpecError("quad must be at least 2");
    if (j.contains("tolerances")) {
        spec.tolerances = j.at("tolerances");
        if (!spec.tolerances.is_object()) throw SpecError("\"tolerances\" must be an object");
        if (spec.tolerances.contains("boundary_margin")) {
            const double m = get_or<double>(spec.tolerances, "boundary_margin", 0.0);
            if (!(m >= 0.0 && m < 0.5)) throw SpecError("boundary_margin must lie in [0, 0.5)");
            spec.boundary_margin = m;
        }
    }
    return spec;
}

ProblemSpec load_problem(const std::string& path) { return parse_problem(read_file(path)); }

json problem_to_json(const ProblemSpec& spec) {
    json comps = json::array();
    for (const auto& c : spec.form.components()) comps.push_back(poly_to_json(c));
    return {{"domain", domain_to_json(spec.domain)},
            {"form", {{"components", comps}}},
            {"mode", to_string(spec.mode)},
            {"grid", spec.grid},
            {"quad", spec.quad},
            {"tolerances", spec.tolerances}};
}

void write_field_csv(std::ostream& os, const GridField& field) {
    const int n = field.grid.dimension();
    std::string line;
    for (int j = 1; j <= n; ++j) {
        line += "re_z" + std::to_string(j) + ",im_z" + std::to_string(j) + ",";
    }
    line += "re_u,im_u\n";
    os << line;
    std::vector<cplx> z(static_cast<std::size_t>(n));
    for (std::size_t k = 0; k < field.values.size(); ++k) {
        const cplx v = field.values[k];
        if (std::isnan(v.real()) || std::isnan(v.imag())) continue;
        field.grid.point(k, z);
        line.clear();
        for (const cplx& c : z) {
            line += format_double(c.real());
            line += ',';
            line += format_double(c.imag());
            line += ',';
        }
        line += format_double(v.real());
        line += ',';
        line += format_double(v.imag());
        line += '\n';
        os << line;
    }
}

}  // namespace dbar
