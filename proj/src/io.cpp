#include "okb/io.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <sstream>

namespace okb {

namespace {

std::string join_issues(const std::vector<ParseIssue>& issues) {
    std::string s;
    for (const auto& i : issues) {
        if (!s.empty()) s += "; ";
        s += i.field + ": " + i.message;
    }
    return s;
}

class Reader {
public:
    std::vector<ParseIssue> issues;

    void fail(std::string field, std::string message) { issues.push_back({std::move(field), std::move(message)}); }

    const Json* member(const Json& obj, const std::string& key, const std::string& path, bool required) {
        if (!obj.is_object()) {
            fail(path, "expected an object");
            return nullptr;
        }
        const auto it = obj.find(key);
        if (it == obj.end()) {
            if (required) fail(path.empty() ? key : path + "." + key, "missing field");
            return nullptr;
        }
        return &*it;
    }

    std::optional<Rational> rational(const Json& j, const std::string& field) {
        try {
            return rational_from_json(j, field);
        } catch (const InputError& e) {
            fail(field, e.what());
            return std::nullopt;
        }
    }

    std::optional<std::size_t> count(const Json& j, const std::string& field) {
        if (!j.is_number_integer() || j.get<long long>() < 0) {
            fail(field, "expected a nonnegative integer");
            return std::nullopt;
        }
        return static_cast<std::size_t>(j.get<long long>());
    }

    Vector vector(const Json& j, const std::string& field) {
        Vector out;
        if (!j.is_array()) {
            fail(field, "expected an array");
            return out;
        }
        for (std::size_t i = 0; i < j.size(); ++i) {
            auto q = rational(j[i], field + "[" + std::to_string(i) + "]");
            out.push_back(q ? *q : Rational(0));
        }
        return out;
    }

    std::vector<Vector> vectors(const Json& j, const std::string& field) {
        std::vector<Vector> out;
        if (!j.is_array()) {
            fail(field, "expected an array of arrays");
            return out;
        }
        for (std::size_t i = 0; i < j.size(); ++i) out.push_back(vector(j[i], field + "[" + std::to_string(i) + "]"));
        return out;
    }

    std::optional<Matrix> matrix(const Json& j, const std::string& field) {
        const auto rows = vectors(j, field);
        if (rows.empty()) {
            fail(field, "expected a nonempty matrix");
            return std::nullopt;
        }
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (rows[i].size() != rows.front().size()) {
                fail(field + "[" + std::to_string(i) + "]", "row length differs from row 0");
                return std::nullopt;
            }
        return Matrix::from_rows(rows, rows.front().size());
    }

    std::vector<std::string> labels(const Json& j, const std::string& field) {
        std::vector<std::string> out;
        if (!j.is_array()) {
            fail(field, "expected an array of strings");
            return out;
        }
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (!j[i].is_string()) fail(field + "[" + std::to_string(i) + "]", "expected a string");
            else out.push_back(j[i].get<std::string>());
        }
        return out;
    }
};

void read_surface(Reader& r, const Json& doc, Instance& inst) {
    if (const auto* j = r.member(doc, "rank", "", true))
        if (auto n = r.count(*j, "rank")) inst.surface.rank = *n;
    if (const auto* j = r.member(doc, "gram", "", true))
        if (auto m = r.matrix(*j, "gram")) inst.surface.gram = std::move(*m);
    if (const auto* j = r.member(doc, "eff_generators", "", true))
        inst.surface.eff_generators = r.vectors(*j, "eff_generators");
    if (const auto* j = r.member(doc, "negative_curves", "", true))
        inst.surface.negative_curves = r.vectors(*j, "negative_curves");
    if (const auto* j = r.member(doc, "labels", "", false)) inst.surface.labels = r.labels(*j, "labels");
    if (const auto* flag = r.member(doc, "flag", "", true)) {
        if (const auto* j = r.member(*flag, "curve_class", "flag", true))
            inst.flag.curve_class = r.vector(*j, "flag.curve_class");
        if (const auto* j = r.member(*flag, "general", "flag", false)) {
            if (!j->is_boolean()) r.fail("flag.general", "expected a boolean");
            else inst.flag.general = j->get<bool>();
        }
    }
}

void read_threefold(Reader& r, const Json& block, Instance& inst) {
    ThreefoldData t;
    const std::string p = "threefold";
    if (const auto* j = r.member(block, "rank", p, true))
        if (auto n = r.count(*j, p + ".rank")) t.rank = *n;
    if (const auto* j = r.member(block, "labels", p, false)) t.labels = r.labels(*j, p + ".labels");
    if (const auto* j = r.member(block, "eff_generators", p, true)) t.eff_generators = r.vectors(*j, p + ".eff_generators");
    if (const auto* j = r.member(block, "y1_class", p, true)) t.y1 = r.vector(*j, p + ".y1_class");
    if (const auto* j = r.member(block, "restriction", p, true))
        if (auto m = r.matrix(*j, p + ".restriction")) t.restriction = std::move(*m);
    if (const auto* j = r.member(block, "triple_products", p, false)) {
        const std::size_t n = t.rank;
        std::vector<Rational> tensor(n * n * n, 0);
        std::vector<bool> seen(n * n * n, false);
        if (!j->is_array()) r.fail(p + ".triple_products", "expected an array of {indices, value}");
        else
            for (std::size_t e = 0; e < j->size(); ++e) {
                const std::string f = p + ".triple_products[" + std::to_string(e) + "]";
                const Json& entry = (*j)[e];
                const auto* idx = r.member(entry, "indices", f, true);
                const auto* val = r.member(entry, "value", f, true);
                if (!idx || !val) continue;
                if (!idx->is_array() || idx->size() != 3) {
                    r.fail(f + ".indices", "expected three basis indices");
                    continue;
                }
                std::array<std::size_t, 3> ijk{};
                bool ok = true;
                for (std::size_t a = 0; a < 3; ++a) {
                    auto v = r.count((*idx)[a], f + ".indices[" + std::to_string(a) + "]");
                    if (!v || *v >= n) {
                        if (v) r.fail(f + ".indices", "index out of range");
                        ok = false;
                        break;
                    }
                    ijk[a] = *v;
                }
                auto value = r.rational(*val, f + ".value");
                if (!ok || !value) continue;
                std::sort(ijk.begin(), ijk.end());
                do {
                    const std::size_t k = (ijk[0] * n + ijk[1]) * n + ijk[2];
                    if (seen[k] && tensor[k] != *value) r.fail(f, "conflicts with an earlier entry");
                    seen[k] = true;
                    tensor[k] = *value;
                } while (std::next_permutation(ijk.begin(), ijk.end()));
            }
        t.triple_products = std::move(tensor);
    }
    t.surface = inst.surface;
    t.flag = inst.flag;
    inst.threefold = std::move(t);
}

Json vectors_json(const std::vector<Vector>& vs) {
    Json a = Json::array();
    for (const auto& v : vs) a.push_back(to_json(v));
    return a;
}

Json matrix_json(const Matrix& m) {
    Json a = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(to_json(m.row(r)));
    return a;
}

}  // namespace

InstanceError::InstanceError(std::vector<ParseIssue> issues)
    : InputError("invalid instance: " + join_issues(issues)), issues_(std::move(issues)) {}

Json to_json(const Rational& q) {
    if (q.get_den() == 1 && q.get_num().fits_slong_p()) return Json(q.get_num().get_si());
    return Json(to_string(q));
}

Json to_json(std::span<const Rational> v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

Json to_json(const Polygon2& p) {
    Json a = Json::array();
    for (const auto& v : p.vertices()) a.push_back(Json::array({to_json(v.x), to_json(v.y)}));
    return a;
}

Rational rational_from_json(const Json& j, const std::string& field) {
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const InputError&) {
            throw InputError("\"" + j.get<std::string>() + "\" is not a rational");
        }
    }
    throw InputError(field + ": expected an integer or a \"p/q\" string");
}

Vector vector_from_json(const Json& j, const std::string& field) {
    Reader r;
    auto v = r.vector(j, field);
    if (!r.issues.empty()) throw InstanceError(r.issues);
    return v;
}

Instance parse_instance(const Json& doc) {
    Reader r;
    Instance inst;
    if (!doc.is_object()) throw InstanceError(std::vector<ParseIssue>{{"(root)", "expected a JSON object"}});
    if (const auto* j = r.member(doc, "name", "", false)) {
        if (!j->is_string()) r.fail("name", "expected a string");
        else inst.name = j->get<std::string>();
    }
    if (const auto* j = r.member(doc, "description", "", false)) {
        if (!j->is_string()) r.fail("description", "expected a string");
        else inst.description = j->get<std::string>();
    }
    read_surface(r, doc, inst);
    if (const auto* j = r.member(doc, "threefold", "", false)) read_threefold(r, *j, inst);
    if (const auto* j = r.member(doc, "golden", "", false)) inst.golden = *j;
    if (!r.issues.empty()) throw InstanceError(r.issues);
    return inst;
}

Instance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InstanceError(std::vector<ParseIssue>{{path.string(), "cannot open file"}});
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw InstanceError(std::vector<ParseIssue>{{path.string() + ":" + std::to_string(line) + ":" + std::to_string(col), e.what()}});
    }
    Instance inst = parse_instance(doc);
    if (inst.name.empty()) inst.name = path.stem().string();
    return inst;
}

Json serialize_instance(const Instance& inst) {
    Json doc;
    if (!inst.name.empty()) doc["name"] = inst.name;
    if (!inst.description.empty()) doc["description"] = inst.description;
    const auto& s = inst.surface;
    doc["rank"] = s.rank;
    if (!s.labels.empty()) doc["labels"] = s.labels;
    doc["gram"] = matrix_json(s.gram);
    doc["eff_generators"] = vectors_json(s.eff_generators);
    doc["negative_curves"] = vectors_json(s.negative_curves);
    doc["flag"] = Json{{"curve_class", to_json(inst.flag.curve_class)}, {"general", inst.flag.general}};
    if (inst.threefold) {
        const auto& t = *inst.threefold;
        Json b;
        b["rank"] = t.rank;
        if (!t.labels.empty()) b["labels"] = t.labels;
        b["eff_generators"] = vectors_json(t.eff_generators);
        b["y1_class"] = to_json(t.y1);
        b["restriction"] = matrix_json(t.restriction);
        if (t.triple_products) {
            Json entries = Json::array();
            const std::size_t n = t.rank;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j)
                    for (std::size_t k = j; k < n; ++k) {
                        const Rational& v = (*t.triple_products)[(i * n + j) * n + k];
                        if (sgn(v) != 0) entries.push_back(Json{{"indices", {i, j, k}}, {"value", to_json(v)}});
                    }
            b["triple_products"] = std::move(entries);
        }
        doc["threefold"] = std::move(b);
    }
    if (!inst.golden.is_null()) doc["golden"] = inst.golden;
    return doc;
}

Vector parse_divisor(std::string_view text, std::size_t rank) {
    Vector out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto piece = text.substr(start, comma == std::string_view::npos ? text.size() - start : comma - start);
        std::string trimmed(piece);
        trimmed.erase(0, trimmed.find_first_not_of(" \t"));
        trimmed.erase(trimmed.find_last_not_of(" \t") + 1);
        out.push_back(parse_rational(trimmed));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (out.size() != rank)
        throw InputError("divisor \"" + std::string(text) + "\" has " + std::to_string(out.size()) +
                         " coefficients, expected " + std::to_string(rank));
    return out;
}

}  // namespace okb
