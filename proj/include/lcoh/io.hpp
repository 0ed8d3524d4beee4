#pragma once

#include <fstream>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "builtins.hpp"

namespace lcoh::io {

using json = nlohmann::ordered_json;

// bad input, with a JSON pointer to the offending field
struct InputError : std::runtime_error {
    std::string path;
    InputError(std::string p, const std::string& msg) : std::runtime_error(p + ": " + msg), path(std::move(p)) {}
};

inline json parse_text(const std::string& text, const std::string& source = "<input>") {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // byte offset to line:column
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col), "malformed JSON");
    }
}

inline json load_file(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw InputError(file, "cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str(), file);
}

namespace detail {

inline std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
inline std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

inline const json& field(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) throw InputError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw InputError(child(path, key), "required field missing");
    return *it;
}

inline int get_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw InputError(path, "expected an integer");
    return j.get<int>();
}

inline int int_field(const json& j, const std::string& key, const std::string& path) { return get_int(field(j, key, path), child(path, key)); }

inline int int_field(const json& j, const std::string& key, const std::string& path, int dflt) {
    if (!j.contains(key)) return dflt;
    return int_field(j, key, path);
}

inline bool bool_field(const json& j, const std::string& key, const std::string& path, bool dflt) {
    if (!j.contains(key)) return dflt;
    if (!j[key].is_boolean()) throw InputError(child(path, key), "expected true or false");
    return j[key].get<bool>();
}

inline std::string string_field(const json& j, const std::string& key, const std::string& path) {
    const json& v = field(j, key, path);
    if (!v.is_string()) throw InputError(child(path, key), "expected a string");
    return v.get<std::string>();
}

inline const json& array_field(const json& j, const std::string& key, const std::string& path) {
    const json& v = field(j, key, path);
    if (!v.is_array()) throw InputError(child(path, key), "expected an array");
    return v;
}

inline Matrix read_matrix(const json& j, int p, int rows, int cols, const std::string& path) {
    if (!j.is_array()) throw InputError(path, "expected an array of rows");
    Matrix m(p, rows, cols);
    if (rows == 0 || cols == 0) {
        if (!j.empty() && !(j.size() == std::size_t(rows) && j[0].empty()))
            throw InputError(path, "expected an empty " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
        return m;
    }
    if (j.size() != std::size_t(rows)) throw InputError(path, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
    for (int r = 0; r < rows; ++r) {
        const json& row = j[r];
        std::string rp = child(path, r);
        if (!row.is_array() || row.size() != std::size_t(cols)) throw InputError(rp, "expected a row of " + std::to_string(cols) + " integers");
        for (int c = 0; c < cols; ++c) {
            int v = get_int(row[c], child(rp, c));
            m.set(r, c, ((v % p) + p) % p);
        }
    }
    return m;
}

inline json write_matrix(const Matrix& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c));
        rows.push_back(row);
    }
    return rows;
}

inline int find_generator(const GradedAlgebra& A, const json& j, const std::string& path) {
    if (j.is_number_integer()) {
        int g = j.get<int>();
        for (int x : A.generators())
            if (x == g) return g;
        throw InputError(path, "basis index " + std::to_string(g) + " is not an algebra generator");
    }
    if (!j.is_string()) throw InputError(path, "expected a generator label or basis index");
    std::string label = j.get<std::string>();
    std::string known;
    for (int g : A.generators()) {
        if (A.label(g) == label) return g;
        known += (known.empty() ? "" : ", ") + A.label(g);
    }
    throw InputError(path, "unknown generator '" + label + "' (generators: " + known + ")");
}

}  // namespace detail

// {"kind": "A(n)", "n": 1} | {"kind": "steenrod", "top": 8} | {"kind": "polynomial", "prime": 2, "degree": 2, "top": 12, "complete": false}
inline AlgebraPtr parse_algebra(const json& j, const std::string& path = "/algebra") {
    using namespace detail;
    std::string kind = string_field(j, "kind", path);
    if (kind == "A(n)") {
        int n = int_field(j, "n", path);
        if (n < 0 || n > 2) throw InputError(child(path, "n"), "A(n) is available for 0 <= n <= 2");
        return build_A_n(n);
    }
    if (kind == "steenrod") {
        int top = int_field(j, "top", path);
        if (top < 0 || top > 40) throw InputError(child(path, "top"), "truncation must lie in [0, 40]");
        return build_truncated_A(top);
    }
    if (kind == "polynomial") {
        int p = int_field(j, "prime", path, 2);
        try {
            lcoh::detail::check_prime(p);
        } catch (const std::exception& e) {
            throw InputError(child(path, "prime"), e.what());
        }
        int deg = int_field(j, "degree", path);
        int top = int_field(j, "top", path);
        if (deg <= 0) throw InputError(child(path, "degree"), "generator degree must be positive");
        if (top < 0) throw InputError(child(path, "top"), "truncation must be nonnegative");
        return polynomial_algebra(p, deg, top, bool_field(j, "complete", path, false));
    }
    throw InputError(child(path, "kind"), "unknown algebra kind '" + kind + "' (expected A(n), steenrod or polynomial)");
}

inline json algebra_json(const GradedAlgebra& A) {
    json j;
    j["name"] = A.name();
    j["prime"] = A.prime();
    j["top"] = A.top();
    j["complete"] = A.complete();
    json dims = json::array();
    for (int d = 0; d <= A.top(); ++d) dims.push_back(A.dim(d));
    j["dims"] = dims;
    json gens = json::array();
    for (int g : A.generators()) gens.push_back(A.label(g));
    j["generators"] = gens;
    return j;
}

// A module description, either {"builtin": name, "top": 8} or explicit:
// {"name", "algebra", "prime", "window": {"lo", "hi"}, "dims", "zero_above", "zero_below",
//  "actions": [{"generator", "degree", "matrix"}]}  or  "coaction": [{"degree", "n", "matrix"}]
inline NamedModule parse_module(const json& j, const std::string& path = "") {
    using namespace detail;
    if (!j.is_object()) throw InputError(path.empty() ? "/" : path, "expected an object");
    if (j.contains("builtin")) {
        std::string name = string_field(j, "builtin", path);
        int top = int_field(j, "top", path, 8);
        try {
            return builtin_module(name, top);
        } catch (const std::invalid_argument& e) {
            throw InputError(child(path, "builtin"), e.what());
        }
    }
    AlgebraPtr alg = parse_algebra(field(j, "algebra", path), child(path, "algebra"));
    const auto& A = *alg;
    if (j.contains("prime") && int_field(j, "prime", path) != A.prime())
        throw InputError(child(path, "prime"), "does not match the algebra's prime " + std::to_string(A.prime()));
    const json& win = field(j, "window", path);
    std::string wp = child(path, "window");
    int lo = int_field(win, "lo", wp), hi = int_field(win, "hi", wp);
    if (hi < lo - 1) throw InputError(wp, "hi < lo - 1");
    const json& dj = array_field(j, "dims", path);
    std::string dp = child(path, "dims");
    if (dj.size() != std::size_t(hi - lo + 1)) throw InputError(dp, "expected " + std::to_string(hi - lo + 1) + " entries for the window");
    std::vector<int> dims;
    for (std::size_t i = 0; i < dj.size(); ++i) {
        int v = get_int(dj[i], child(dp, i));
        if (v < 0) throw InputError(child(dp, i), "negative dimension");
        dims.push_back(v);
    }
    bool za = bool_field(j, "zero_above", path, true), zb = bool_field(j, "zero_below", path, true);
    NamedModule out{alg, GradedModule(), ""};
    if (j.contains("coaction")) {
        if (j.contains("actions")) throw InputError(child(path, "coaction"), "give either actions or a coaction, not both");
        if (!za) throw InputError(child(path, "zero_above"), "comodules are bounded above in this format");
        auto coalg = std::make_shared<const GradedCoalgebra>(dualize_algebra(alg));
        GradedComodule c;
        c.coalg = coalg;
        c.lo = lo;
        c.hi = hi;
        c.dims = dims;
        c.zero_below = zb;
        for (int d = lo; d <= hi; ++d) {
            std::vector<Matrix> comps;
            for (int n = 0; n <= std::min(coalg->top, hi - d); ++n) {
                Matrix ps(A.prime(), c.dim(d + n) * coalg->dims[n], c.dim(d));
                if (n == 0) ps = Matrix::identity(A.prime(), c.dim(d));
                comps.push_back(ps);
            }
            c.psi.push_back(comps);
        }
        const json& cj = array_field(j, "coaction", path);
        std::string cp = child(path, "coaction");
        for (std::size_t i = 0; i < cj.size(); ++i) {
            std::string ep = child(cp, i);
            int d = int_field(cj[i], "degree", ep), n = int_field(cj[i], "n", ep);
            if (d < lo || d > hi) throw InputError(child(ep, "degree"), "outside the window");
            if (n < 0 || n > std::min(coalg->top, hi - d)) throw InputError(child(ep, "n"), "coaction component out of range");
            c.psi[d - lo][n] = read_matrix(field(cj[i], "matrix", ep), A.prime(), c.dim(d + n) * coalg->dims[n], c.dim(d), child(ep, "matrix"));
        }
        if (auto err = check_comodule(c)) throw InputError(cp, *err);
        out.module = iota(c);
    } else {
        try {
            out.module = GradedModule(alg, lo, hi, dims, za, zb);
        } catch (const std::invalid_argument& e) {
            throw InputError(wp, e.what());
        }
        if (j.contains("actions")) {
            const json& aj = array_field(j, "actions", path);
            std::string ap = child(path, "actions");
            for (std::size_t i = 0; i < aj.size(); ++i) {
                std::string ep = child(ap, i);
                int g = find_generator(A, field(aj[i], "generator", ep), child(ep, "generator"));
                int d = int_field(aj[i], "degree", ep);
                int e = d + A.degree(g);
                if (d < lo || e > hi) throw InputError(child(ep, "degree"), "action from degree " + std::to_string(d) + " leaves the window");
                out.module.set_action(g, d, read_matrix(field(aj[i], "matrix", ep), A.prime(), dims[e - lo], dims[d - lo], child(ep, "matrix")));
            }
        }
        out.module.extend_from_generators();
        if (auto err = out.module.check_axioms()) throw InputError(child(path, "actions"), *err);
    }
    out.module.name = j.contains("name") ? string_field(j, "name", path) : "input";
    out.description = out.module.name;
    return out;
}

// the inverse of parse_module on explicit descriptions; algebra must be given separately
inline json module_json(const GradedModule& m, const json& algebra) {
    const auto& A = *m.algebra();
    json j;
    j["name"] = m.name;
    j["algebra"] = algebra;
    j["prime"] = m.prime();
    j["window"] = {{"lo", m.lo()}, {"hi", m.hi()}};
    j["dims"] = m.dims();
    j["zero_above"] = m.zero_above();
    j["zero_below"] = m.zero_below();
    json acts = json::array();
    for (int g : A.generators())
        for (int d = m.lo(); d + A.degree(g) <= m.hi(); ++d) {
            Matrix a = m.action(g, d);
            if (a.is_zero()) continue;
            acts.push_back({{"generator", A.label(g)}, {"degree", d}, {"matrix", detail::write_matrix(a)}});
        }
    j["actions"] = acts;
    return j;
}

// a map between two parsed modules: {"shift": 0, "blocks": [{"degree", "matrix"}]}; missing blocks are zero
inline ModuleMap parse_map(const json& j, const GradedModule& src, const GradedModule& tgt, const std::string& path) {
    using namespace detail;
    int shift = int_field(j, "shift", path, 0);
    ModuleMap f = zero_map(src, tgt, shift);
    if (j.contains("blocks")) {
        const json& bj = array_field(j, "blocks", path);
        std::string bp = child(path, "blocks");
        for (std::size_t i = 0; i < bj.size(); ++i) {
            std::string ep = child(bp, i);
            int d = int_field(bj[i], "degree", ep);
            if (d < src.lo() || d > src.hi()) throw InputError(child(ep, "degree"), "outside the source window");
            int rows = tgt.known(d + shift) ? tgt.dim(d + shift) : 0;
            f.m[d - f.lo] = read_matrix(field(bj[i], "matrix", ep), src.prime(), rows, src.dim(d), child(ep, "matrix"));
        }
    }
    if (!is_module_map(f, src, tgt)) throw InputError(path, "not a module map: fails to commute with the action");
    return f;
}

inline Tower::Tail parse_tail_kind(const std::string& s, const std::string& path) {
    if (s == "constant") return Tower::Tail::Constant;
    if (s == "repeat-last") return Tower::Tail::RepeatLast;
    if (s == "window-stable") return Tower::Tail::WindowStable;
    if (s == "unspecified") return Tower::Tail::Unspecified;
    if (s == "non-mittag-leffler") return Tower::Tail::NonMittagLeffler;
    throw InputError(path, "unknown tail '" + s + "' (expected constant, repeat-last, window-stable, unspecified or non-mittag-leffler)");
}

inline std::vector<std::string> builtin_tower_names() {
    std::vector<std::string> out;
    for (const auto& t : tower_corpus()) out.push_back(t.name);
    out.push_back("non-mittag-leffler");
    return out;
}

inline Tower builtin_tower(const std::string& name) {
    if (name == "non-mittag-leffler") return non_mittag_leffler_tower();
    for (auto& t : tower_corpus())
        if (t.name == name) return t;
    throw std::invalid_argument("unknown builtin tower '" + name + "'");
}

// {"builtin": name} or {"name", "modules": [module...], "maps": [map...], "tail", "endo": map}
// maps[i] goes from modules[i+1] to modules[i]; all modules must share one algebra description
inline Tower parse_tower(const json& j, const std::string& path = "") {
    using namespace detail;
    if (!j.is_object()) throw InputError(path.empty() ? "/" : path, "expected an object");
    if (j.contains("builtin")) {
        try {
            return builtin_tower(string_field(j, "builtin", path));
        } catch (const std::invalid_argument& e) {
            throw InputError(child(path, "builtin"), e.what());
        }
    }
    Tower T;
    T.name = j.contains("name") ? string_field(j, "name", path) : "input";
    const json& alg = field(j, "algebra", path);
    AlgebraPtr a = parse_algebra(alg, child(path, "algebra"));
    const json& mj = array_field(j, "modules", path);
    std::string mp = child(path, "modules");
    if (mj.empty()) throw InputError(mp, "a tower needs at least one module");
    for (std::size_t i = 0; i < mj.size(); ++i) {
        json desc = mj[i];
        if (desc.is_object() && !desc.contains("algebra")) desc["algebra"] = alg;
        NamedModule nm = parse_module(desc, child(mp, i));
        // one algebra object for the whole tower
        GradedModule m(a, nm.module.lo(), nm.module.hi(), nm.module.dims(), nm.module.zero_above(), nm.module.zero_below());
        for (int g = 0; g < a->size(); ++g)
            for (int d = m.lo(); d + a->degree(g) <= m.hi(); ++d)
                if (a->degree(g) > 0) m.set_action(g, d, nm.module.action(g, d));
        m.name = nm.module.name;
        T.modules.push_back(m);
    }
    const json& fj = array_field(j, "maps", path);
    std::string fp = child(path, "maps");
    if (fj.size() + 1 != mj.size()) throw InputError(fp, "expected " + std::to_string(mj.size() - 1) + " maps for " + std::to_string(mj.size()) + " modules");
    for (std::size_t i = 0; i < fj.size(); ++i) T.maps.push_back(parse_map(fj[i], T.modules[i + 1], T.modules[i], child(fp, i)));
    T.tail = parse_tail_kind(j.contains("tail") ? string_field(j, "tail", path) : "constant", child(path, "tail"));
    if (T.tail == Tower::Tail::RepeatLast) T.endo = parse_map(field(j, "endo", path), T.modules.back(), T.modules.back(), child(path, "endo"));
    try {
        check_tower(T);
    } catch (const std::invalid_argument& e) {
        throw InputError(path.empty() ? "/" : path, e.what());
    }
    return T;
}

inline TailDescriptor parse_tail_descriptor(const json& j, const std::string& path) {
    using namespace detail;
    TailDescriptor t;
    std::string kind = string_field(j, "kind", path);
    if (kind == "eventually-zero") t.kind = TailDescriptor::Kind::EventuallyZero;
    else if (kind == "eventually-constant") t.kind = TailDescriptor::Kind::EventuallyConstant;
    else if (kind == "shifted-truncation") t.kind = TailDescriptor::Kind::ShiftedTruncation;
    else throw InputError(child(path, "kind"), "unsupported tail '" + kind + "' (expected eventually-zero, eventually-constant or shifted-truncation)");
    t.from = int_field(j, "from", path, 0);
    if (t.kind == TailDescriptor::Kind::ShiftedTruncation) {
        std::string g = j.contains("growth") ? string_field(j, "growth", path) : "affine";
        if (g == "affine") t.growth = TailDescriptor::Growth::Affine;
        else if (g == "exponential") t.growth = TailDescriptor::Growth::Exponential;
        else throw InputError(child(path, "growth"), "expected affine or exponential");
        const json& s = field(j, "shift", path);
        const json& c = field(j, "depth", path);
        t.d_a = int_field(s, "a", child(path, "shift"));
        t.d_b = int_field(s, "b", child(path, "shift"), 0);
        t.c_a = int_field(c, "a", child(path, "depth"));
        t.c_b = int_field(c, "b", child(path, "depth"), 0);
    }
    return t;
}

inline json tail_json(const TailDescriptor& t) {
    json j;
    j["kind"] = to_string(t.kind);
    j["from"] = t.from;
    if (t.kind == TailDescriptor::Kind::ShiftedTruncation) {
        j["growth"] = t.growth == TailDescriptor::Growth::Affine ? "affine" : "exponential";
        j["shift"] = {{"a", t.d_a}, {"b", t.d_b}};
        j["depth"] = {{"a", t.c_a}, {"b", t.c_b}};
    }
    return j;
}

struct FamilyOptions {
    int horizon_N = 20;   // members for generated families
    int j_max = 0;        // 0: pick from the family
    int max_s = 0;        // 0: n + 1
};

// {"generator": "example1" | "example2", "parameters": {...}} or
// {"name", "algebra", "members": [module...], "tail": descriptor, "chain": {"j_max"}}
inline FamilySetup parse_family(const json& j, int n, const FamilyOptions& o, const std::string& path = "") {
    using namespace detail;
    if (!j.is_object()) throw InputError(path.empty() ? "/" : path, "expected an object");
    int max_s = o.max_s > 0 ? o.max_s : n + 1;
    if (j.contains("generator")) {
        std::string g = string_field(j, "generator", path);
        json par = j.contains("parameters") ? j["parameters"] : json::object();
        std::string pp = child(path, "parameters");
        if (g == "example1") {
            int N = int_field(par, "N", pp, o.horizon_N);
            if (N < 1) throw InputError(child(pp, "N"), "need at least two members");
            int top = int_field(par, "top", pp, 2 * N + 4);
            int stages = int_field(par, "stages", pp, N + 3);
            try {
                return example1(N, top, stages, max_s);
            } catch (const std::invalid_argument& e) {
                throw InputError(pp, e.what());
            }
        }
        if (g == "example2") {
            int imax = int_field(par, "imax", pp, 4);
            int top = int_field(par, "top", pp, 16);
            if (imax < 1 || imax > 5) throw InputError(child(pp, "imax"), "imax must lie in [1, 5]");
            try {
                return example2(imax, top, max_s);
            } catch (const std::invalid_argument& e) {
                throw InputError(pp, e.what());
            }
        }
        throw InputError(child(path, "generator"), "unknown family generator '" + g + "' (expected example1 or example2)");
    }
    FamilySetup s;
    const json& alg = field(j, "algebra", path);
    s.alg = parse_algebra(alg, child(path, "algebra"));
    s.family.name = j.contains("name") ? string_field(j, "name", path) : "input";
    const json& mj = array_field(j, "members", path);
    std::string mp = child(path, "members");
    if (mj.empty()) throw InputError(mp, "a family needs at least one member");
    int lo = 0, hi = 0;
    for (std::size_t i = 0; i < mj.size(); ++i) {
        json desc = mj[i];
        if (desc.is_object() && !desc.contains("algebra") && !desc.contains("builtin")) desc["algebra"] = alg;
        NamedModule nm = parse_module(desc, child(mp, i));
        GradedModule m(s.alg, nm.module.lo(), nm.module.hi(), nm.module.dims(), nm.module.zero_above(), nm.module.zero_below());
        if (nm.alg->name() != s.alg->name() || nm.alg->top() != s.alg->top()) throw InputError(child(mp, i), "member is over a different algebra");
        for (int g = 0; g < s.alg->size(); ++g)
            for (int d = m.lo(); d + s.alg->degree(g) <= m.hi(); ++d)
                if (s.alg->degree(g) > 0) m.set_action(g, d, nm.module.action(g, d));
        m.name = nm.module.name;
        lo = i == 0 ? m.lo() : std::min(lo, m.lo());
        hi = i == 0 ? m.hi() : std::max(hi, m.hi());
        s.family.members.push_back(m);
        s.indices.push_back(int(i));
    }
    if (j.contains("tail")) s.family.tail = parse_tail_descriptor(j["tail"], child(path, "tail"));
    const AlgebraPtr& A = s.alg;
    int J = o.j_max;
    if (j.contains("chain")) J = int_field(field(j, "chain", path), "j_max", child(path, "chain"));
    if (J <= 0) J = A->complete() ? hi - lo + 2 : A->top();
    if (!A->complete() && J > A->top() + 1) throw InputError(child(path, "chain"), "j_max exceeds the algebra truncation + 1");
    s.t = j.contains("t") ? int_field(j, "t", path) : 0;
    int max_t = A->complete() ? hi - lo + J + max_s : A->top();
    s.chain = resolve_grad_chain(A, J, max_s, max_t);
    return s;
}

// ---- reports ------------------------------------------------------------------------------

enum class Format { Json, Tsv, Text };

inline Format parse_format(const std::string& s) {
    if (s == "json") return Format::Json;
    if (s == "tsv") return Format::Tsv;
    if (s == "text") return Format::Text;
    throw std::invalid_argument("unknown format '" + s + "'");
}

struct Table {
    std::string title;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct Report {
    json doc;
    std::vector<Table> tables;
    std::vector<std::string> notes;
};

inline std::string render(const Report& r, Format f) {
    std::ostringstream out;
    if (f == Format::Json) {
        out << r.doc.dump(2) << "\n";
        return out.str();
    }
    for (std::size_t k = 0; k < r.tables.size(); ++k) {
        const Table& t = r.tables[k];
        if (k) out << "\n";
        if (f == Format::Tsv) {
            out << "# " << t.title << "\n";
            for (std::size_t i = 0; i < t.header.size(); ++i) out << (i ? "\t" : "") << t.header[i];
            out << "\n";
            for (const auto& row : t.rows) {
                for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "\t" : "") << row[i];
                out << "\n";
            }
            continue;
        }
        std::vector<std::size_t> w(t.header.size(), 0);
        for (std::size_t i = 0; i < t.header.size(); ++i) w[i] = t.header[i].size();
        for (const auto& row : t.rows)
            for (std::size_t i = 0; i < row.size() && i < w.size(); ++i) w[i] = std::max(w[i], row[i].size());
        out << t.title << "\n";
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                out << (i ? "  " : "");
                if (i + 1 < cells.size()) out << std::left << std::setw(int(w[i]));
                out << cells[i];
            }
            out << "\n";
        };
        line(t.header);
        std::size_t total = 0;
        for (auto x : w) total += x + 2;
        out << std::string(total > 2 ? total - 2 : 0, '-') << "\n";
        for (const auto& row : t.rows) line(row);
    }
    for (const auto& n : r.notes) out << (f == Format::Tsv ? "# " : "") << n << "\n";
    return out.str();
}

inline std::string vec_string(const Vec& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s + "]";
}

inline json subspace_json(const Subspace& s) {
    json b = json::array();
    for (const auto& v : s.vectors()) b.push_back(v);
    return b;
}

inline std::string cert_string(const Stabilization& s) {
    if (!s.stabilized) return "unstabilized";
    return s.certificate + (s.horizon_bounded ? " (horizon-bounded)" : "");
}

inline json stab_json(const Stabilization& s) {
    json j;
    j["stabilized"] = s.stabilized;
    if (s.stabilized) {
        j["value"] = s.value;
        j["from_stage"] = s.from_stage;
        j["certificate"] = s.certificate;
        j["horizon_bounded"] = s.horizon_bounded;
    }
    return j;
}

inline Report describe_report(const NamedModule& nm) {
    const GradedModule& m = nm.module;
    Report r;
    r.doc["module"] = m.name;
    r.doc["description"] = nm.description;
    r.doc["algebra"] = algebra_json(*nm.alg);
    r.doc["window"] = {{"lo", m.lo()}, {"hi", m.hi()}};
    r.doc["zero_above"] = m.zero_above();
    r.doc["zero_below"] = m.zero_below();
    r.doc["total_dim"] = m.total_dim();
    auto assoc = nm.alg->check_associativity();
    auto axioms = m.check_axioms();
    r.doc["checks"] = {{"algebra_associative", !assoc}, {"module_axioms", !axioms}};
    if (assoc) r.notes.push_back("algebra: " + *assoc);
    if (axioms) r.notes.push_back("module: " + *axioms);
    Table t{"degreewise dimensions of " + m.name, {"degree", "dim", "basis"}, {}};
    json degs = json::array();
    for (int d = m.lo(); d <= m.hi(); ++d) {
        std::string basis;
        json labels = json::array();
        for (int i = 0; i < m.dim(d); ++i) {
            basis += (i ? " " : "") + m.basis_label(d, i);
            labels.push_back(m.basis_label(d, i));
        }
        degs.push_back({{"degree", d}, {"dim", m.dim(d)}, {"basis", labels}});
        t.rows.push_back({std::to_string(d), std::to_string(m.dim(d)), basis});
    }
    r.doc["degrees"] = degs;
    r.tables.push_back(t);
    r.notes.push_back(std::string("bounded above: ") + (m.zero_above() ? "yes" : "unknown") + ", bounded below: " + (m.zero_below() ? "yes" : "unknown"));
    return r;
}

inline Report torsion_report(const std::string& what, const IdealSet& s, const GradedModule& m, const TorsionResult& t) {
    Report r;
    r.doc["quantity"] = what;
    r.doc["ideal_set"] = s.name;
    r.doc["module"] = m.name;
    Table tab{what + " of " + m.name + " over " + s.name, {"degree", "dim", "module_dim", "certified", "basis"}, {}};
    json degs = json::array();
    int total = 0;
    for (int d = m.lo(); d <= m.hi(); ++d) {
        const Subspace& sp = t.at(d);
        total += sp.dim();
        std::string basis;
        for (const auto& v : sp.vectors()) basis += (basis.empty() ? "" : " ") + vec_string(v);
        bool cert = t.certified[d - m.lo()];
        degs.push_back({{"degree", d}, {"dim", sp.dim()}, {"module_dim", m.dim(d)}, {"certified", cert}, {"basis", subspace_json(sp)}});
        tab.rows.push_back({std::to_string(d), std::to_string(sp.dim()), std::to_string(m.dim(d)), cert ? "yes" : "no", basis});
    }
    r.doc["total_dim"] = total;
    r.doc["module_total_dim"] = m.total_dim();
    r.doc["degrees"] = degs;
    r.tables.push_back(tab);
    r.notes.push_back(what + " total dimension " + std::to_string(total) + " of " + std::to_string(m.total_dim()));
    return r;
}

inline Report rationality_report(const GradedModule& m, const RationalityReport& rr) {
    Report r;
    r.doc["module"] = m.name;
    r.doc["annihilator_test"] = to_string(rr.annihilator_test);
    r.doc["h0_test"] = to_string(rr.h0_test);
    r.doc["agree"] = rr.agree;
    r.doc["rational"] = to_string(rr.verdict());
    if (rr.witness) r.doc["witness"] = {{"degree", rr.witness->first}, {"vector", rr.witness->second}, {"label", rr.witness_label}};
    if (!rr.caveat.empty()) r.doc["caveat"] = rr.caveat;
    Table t{"rationality of " + m.name, {"test", "result"}, {}};
    t.rows.push_back({"annihilators contain some I_j", to_string(rr.annihilator_test)});
    t.rows.push_back({"H0_dist(M) = M", to_string(rr.h0_test)});
    t.rows.push_back({"verdict", to_string(rr.verdict())});
    if (rr.witness) t.rows.push_back({"witness", rr.witness_label + " in degree " + std::to_string(rr.witness->first)});
    r.tables.push_back(t);
    if (!rr.caveat.empty()) r.notes.push_back(rr.caveat);
    return r;
}

inline Report ext_report(const std::string& src, const std::string& tgt, const ExtTable& tab) {
    Report r;
    r.doc["source"] = src;
    r.doc["target"] = tgt;
    Table t{"Ext^{s,t}(" + src + ", " + tgt + "), * = uncertified", {"s \\ t"}, {}};
    for (int x = tab.t_lo; x <= tab.t_hi; ++x) t.header.push_back(std::to_string(x));
    json cells = json::array();
    for (int s = 0; s <= tab.max_s; ++s) {
        std::vector<std::string> row{std::to_string(s)};
        for (int x = tab.t_lo; x <= tab.t_hi; ++x) {
            bool c = tab.certified[s][x - tab.t_lo];
            row.push_back(std::to_string(tab.at(s, x)) + (c ? "" : "*"));
            cells.push_back({{"s", s}, {"t", x}, {"dim", tab.at(s, x)}, {"certified", c}});
        }
        t.rows.push_back(row);
    }
    r.doc["cells"] = cells;
    r.tables.push_back(t);
    return r;
}

inline Report localcoh_report(const std::string& module, const std::string& chain, const LocalCohomology& lc) {
    Report r;
    r.doc["module"] = module;
    r.doc["chain"] = chain;
    r.doc["n"] = lc.n;
    r.doc["stages"] = lc.index;
    Table t{"Ext^" + std::to_string(lc.n) + "(A/I_j, " + module + ") by stage j and degree t, * = uncertified", {"t"}, {}};
    for (int j : lc.index) t.header.push_back("j=" + std::to_string(j));
    t.header.push_back("colim");
    t.header.push_back("certificate");
    json cells = json::array();
    for (const auto& cell : lc.cells) {
        std::vector<std::string> row{std::to_string(cell.t)};
        json dims = json::array(), cert = json::array();
        for (const auto& g : cell.stages) {
            row.push_back(std::to_string(g.dim()) + (g.certified ? "" : "*"));
            dims.push_back(g.dim());
            cert.push_back(g.certified);
        }
        row.push_back(cell.stab.stabilized ? std::to_string(cell.stab.value) : "?");
        row.push_back(cert_string(cell.stab));
        t.rows.push_back(row);
        cells.push_back({{"t", cell.t}, {"stage_dims", dims}, {"stage_certified", cert}, {"colimit", stab_json(cell.stab)}});
    }
    r.doc["cells"] = cells;
    r.tables.push_back(t);
    return r;
}

inline Report product_report(const DerivedProductReport& p, const FamilySetup& s) {
    Report r;
    r.doc["family"] = p.family;
    r.doc["n"] = p.n;
    r.doc["t"] = p.t;
    r.doc["start_stage"] = s.chain.index.empty() ? 0 : s.chain.index[p.start_stage];
    if (s.family.tail) r.doc["tail"] = tail_json(*s.family.tail);
    Table t{"R^" + std::to_string(p.n) + " of the product of " + p.family + " in degree " + std::to_string(p.t), {"i", "member", "dim", "survival", "colim", "certificate"}, {}};
    json comps = json::array();
    for (const auto& c : p.components) {
        int i = s.indices.empty() ? c.index : s.indices[c.index];
        std::string surv = c.survival.order < 0 ? "-" : std::to_string(c.survival.order) + (c.survival.reached_horizon ? "+" : "");
        t.rows.push_back({std::to_string(i), s.family.members[c.index].name, std::to_string(c.stage_dim), surv, c.stab.stabilized ? std::to_string(c.stab.value) : "?", cert_string(c.stab)});
        comps.push_back({{"index", i},
                         {"member", s.family.members[c.index].name},
                         {"stage_dim", c.stage_dim},
                         {"survival_order", c.survival.order},
                         {"reached_horizon", c.survival.reached_horizon},
                         {"colimit", stab_json(c.stab)}});
    }
    r.doc["components"] = comps;
    json ws = json::array();
    for (int k : p.witness_subsequence) ws.push_back(s.indices.empty() ? k : s.indices[k]);
    r.doc["witness_subsequence"] = ws;
    r.doc["verdict"] = {{"kind", to_string(p.verdict.kind)}, {"horizon_bounded", p.verdict.horizon_bounded}, {"reason", p.verdict.reason}};
    r.tables.push_back(t);
    std::string v = std::string("verdict: ") + to_string(p.verdict.kind);
    if (p.verdict.kind == ProductVerdict::Kind::Nonzero && p.verdict.horizon_bounded) v += " (horizon-bounded certificate)";
    r.notes.push_back(v);
    r.notes.push_back("reason: " + p.verdict.reason);
    return r;
}

inline Report seqlim_report(const Tower& T, const SequentialLimitReport& s, const MooreComplex* mc, const MilnorCheck* mil) {
    Report r;
    r.doc["tower"] = T.name;
    r.doc["tail"] = to_string(T.tail);
    r.doc["mittag_leffler"] = to_string(mittag_leffler(T));
    r.doc["lim1_vanishes"] = to_string(lim1_vanishes(T));
    r.doc["n"] = s.n;
    r.doc["refused"] = s.refused;
    if (s.refused) {
        r.doc["refusal"] = s.refusal;
        r.notes.push_back("refused: " + s.refusal);
        return r;
    }
    Table t{"R^" + std::to_string(s.n) + " lim of " + T.name, {"t", "dim", "certificate"}, {}};
    json cells = json::array();
    for (std::size_t k = 0; k < s.degrees.size(); ++k) {
        t.rows.push_back({std::to_string(s.degrees[k]), s.dims[k] < 0 ? "?" : std::to_string(s.dims[k]), s.certificates[k]});
        cells.push_back({{"t", s.degrees[k]}, {"dim", s.dims[k]}, {"certificate", s.certificates[k]}});
    }
    r.doc["cells"] = cells;
    r.tables.push_back(t);
    if (mc) {
        Table m{"finite Moore complex of " + T.name, {"degree", "dim C0", "dim C1", "H0", "H1"}, {}};
        json mj = json::array();
        for (int d = mc->lo; d <= mc->hi; ++d) {
            m.rows.push_back({std::to_string(d), std::to_string(mc->c0[d - mc->lo]), std::to_string(mc->c1[d - mc->lo]), std::to_string(mc->h0(d)), std::to_string(mc->h1(d))});
            mj.push_back({{"degree", d}, {"h0", mc->h0(d)}, {"h1", mc->h1(d)}});
        }
        r.doc["moore"] = mj;
        r.tables.push_back(m);
    }
    if (mil) {
        r.doc["milnor"] = {{"refused", mil->refused}, {"exact", mil->exact}, {"checked_cells", mil->checked_cells}, {"skipped_cells", mil->skipped_cells}, {"failures", mil->failures}};
        r.notes.push_back("Milnor sequence: " + std::string(mil->exact ? "exact" : "NOT exact") + " on " + std::to_string(mil->checked_cells) + " certified cells, " +
                          std::to_string(mil->skipped_cells) + " skipped");
        for (const auto& f : mil->failures) r.notes.push_back("  " + f);
    }
    return r;
}

}  // namespace lcoh::io
