#pragma once

// The solution database. One record per UTF-8 text file, in a line-oriented
// format with infix expressions (see expr.hpp). Towers live in their own
// files so sibling solutions share one curve presentation; records reference
// them by name. The loader evaluates every expression into exact field
// elements and validates all tower and non-degeneracy invariants.
//
// Tower file:
//   tower NAME
//   base VAR
//   radicand GEN = EXPR          # polynomial in VAR, squarefree, canonical
//   define NAME = EXPR           # derived generator products
//   model hyperelliptic J Z      # double-cover model with parameter J
//     relation Z^2 = EXPR
//     map COORD = EXPR           # tower coordinate in terms of J, Z
//   end
//   model plane P Q              # plane-curve model
//     relation EXPR = EXPR
//     map COORD = EXPR           # tower coordinate in terms of P, Q
//     inverse P = EXPR           # or: plane coordinate in tower terms
//   end
//   note TEXT
//
// Record file:
//   record ID
//   tower NAME                   # or an inline base/radicand/define block
//   let NAME = EXPR
//   theta Q Q Q Q
//   y = EXPR
//   t = EXPR
//   genus N
//   degree N
//   parent ID | sibling ID | theta-source stated|derived | note TEXT

#include <pvi/equation.hpp>
#include <pvi/expr.hpp>
#include <pvi/tower.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace pvi {

struct CatalogError : std::runtime_error {
    explicit CatalogError(const std::string &m) : std::runtime_error(m) {}
};

struct ModelPresentation {
    enum class Kind { Hyperelliptic, Plane };
    Kind kind = Kind::Hyperelliptic;
    std::string var1, var2;  // (parameter, generator) or (p, q)
    ExprPtr relation_lhs, relation_rhs;
    std::vector<std::pair<std::string, ExprPtr>> maps;          // tower coord <- model expr
    std::vector<std::pair<std::string, ExprPtr>> inverse_maps;  // model coord <- tower expr
};

struct TowerSpec {
    std::string name;
    TowerPtr tower;
    std::vector<std::pair<std::string, ExprPtr>> radicand_exprs;
    std::vector<std::pair<std::string, ExprPtr>> defines;
    std::vector<ModelPresentation> models;
    std::vector<std::string> notes;

    // Environment with the base variable, generators and defines bound.
    std::map<std::string, FieldElement> environment() const {
        std::map<std::string, FieldElement> env;
        env[tower->var()] = FieldElement::base_variable(tower);
        for (int i = 0; i < tower->depth(); ++i)
            env[tower->generator_names()[static_cast<std::size_t>(i)]] =
                FieldElement::generator(tower, i);
        for (const auto &[name, expr] : defines) {
            env[name] = eval_expression<FieldElement>(
                expr,
                [&](const std::string &n) -> FieldElement {
                    auto it = env.find(n);
                    if (it == env.end())
                        throw CatalogError("unknown symbol '" + n + "' in define of '" + name + "'");
                    return it->second;
                },
                [&](const Rational &q) { return FieldElement::constant(tower, q); });
        }
        return env;
    }
};

struct SolutionRecord {
    std::string id;
    std::string tower_ref;  // empty when the tower block is inline
    TowerSpec tower_spec;
    std::vector<std::pair<std::string, ExprPtr>> lets;
    ThetaParams theta;
    ExprPtr y_expr, t_expr;
    PviSolution solution;
    int expected_genus = -1;
    int expected_degree = -1;
    std::string parent;
    std::string sibling;
    std::string theta_source = "stated";
    std::vector<std::string> notes;
};

using TowerResolver = std::function<TowerSpec(const std::string &)>;

namespace detail {

struct Line {
    int number;
    std::string text;
};

inline std::vector<Line> split_lines(const std::string &text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string l;
    int n = 0;
    while (std::getline(in, l)) {
        ++n;
        auto hash = l.find('#');
        if (hash != std::string::npos) l = l.substr(0, hash);
        std::size_t a = l.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        std::size_t b = l.find_last_not_of(" \t\r");
        out.push_back({n, l.substr(a, b - a + 1)});
    }
    return out;
}

inline std::pair<std::string, std::string> split_word(const std::string &s) {
    std::size_t sp = s.find_first_of(" \t");
    if (sp == std::string::npos) return {s, ""};
    std::size_t rest = s.find_first_not_of(" \t", sp);
    return {s.substr(0, sp), rest == std::string::npos ? "" : s.substr(rest)};
}

// "name = expr" -> (name, parsed expr)
inline std::pair<std::string, ExprPtr> parse_binding(const std::string &payload, int line) {
    auto eq = payload.find('=');
    if (eq == std::string::npos)
        throw ParseError("'=' expected in binding", line, 1);
    std::string name = payload.substr(0, eq);
    std::size_t b = name.find_last_not_of(" \t");
    if (b == std::string::npos) throw ParseError("name expected before '='", line, 1);
    name = name.substr(0, b + 1);
    for (char c : name)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
            throw ParseError("bad name '" + name + "'", line, 1);
    return {name, parse_expression(payload.substr(eq + 1), line)};
}

inline ModelPresentation parse_model_block(const std::vector<Line> &lines, std::size_t &i) {
    auto [kw, payload] = split_word(lines[i].text);
    ModelPresentation model;
    auto [kind_word, vars] = split_word(payload);
    if (kind_word == "hyperelliptic")
        model.kind = ModelPresentation::Kind::Hyperelliptic;
    else if (kind_word == "plane")
        model.kind = ModelPresentation::Kind::Plane;
    else
        throw ParseError("model kind 'hyperelliptic' or 'plane' expected", lines[i].number, 1);
    auto [v1, v2] = split_word(vars);
    if (v1.empty() || v2.empty())
        throw ParseError("model needs two variable names", lines[i].number, 1);
    model.var1 = v1;
    model.var2 = v2;
    ++i;
    for (; i < lines.size(); ++i) {
        auto [word, rest] = split_word(lines[i].text);
        if (word == "end") return model;
        if (word == "relation") {
            auto eq = rest.find('=');
            if (eq == std::string::npos)
                throw ParseError("relation needs '='", lines[i].number, 1);
            model.relation_lhs = parse_expression(rest.substr(0, eq), lines[i].number);
            model.relation_rhs = parse_expression(rest.substr(eq + 1), lines[i].number);
        } else if (word == "map") {
            model.maps.push_back(parse_binding(rest, lines[i].number));
        } else if (word == "inverse") {
            model.inverse_maps.push_back(parse_binding(rest, lines[i].number));
        } else {
            throw ParseError("unexpected directive '" + word + "' in model block",
                             lines[i].number, 1);
        }
    }
    throw ParseError("model block missing 'end'", lines.back().number, 1);
}

struct TowerBlock {
    std::string base;
    std::vector<std::pair<std::string, ExprPtr>> radicands;
    std::vector<std::pair<std::string, ExprPtr>> defines;

    TowerPtr build() const {
        if (base.empty()) throw CatalogError("tower: missing 'base' directive");
        std::vector<UniPoly> rads;
        std::vector<std::string> names;
        for (const auto &[name, expr] : radicands) {
            RatFunc r = eval_expression<RatFunc>(
                expr,
                [&](const std::string &n) -> RatFunc {
                    if (n != base)
                        throw CatalogError("radicand of '" + name +
                                           "' uses unknown symbol '" + n + "'");
                    return RatFunc::variable(base);
                },
                [&](const Rational &q) { return RatFunc::constant(base, q); });
            if (!r.is_polynomial())
                throw CatalogError("radicand of '" + name + "' is not a polynomial");
            rads.push_back(r.num());
            names.push_back(name);
        }
        return Tower::make(base, std::move(rads), std::move(names));
    }
};

}  // namespace detail

inline TowerSpec parse_tower(const std::string &text) {
    auto lines = detail::split_lines(text);
    TowerSpec spec;
    detail::TowerBlock block;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        auto [word, rest] = detail::split_word(lines[i].text);
        if (word == "tower") {
            spec.name = rest;
        } else if (word == "base") {
            block.base = rest;
        } else if (word == "radicand") {
            block.radicands.push_back(detail::parse_binding(rest, lines[i].number));
        } else if (word == "define") {
            block.defines.push_back(detail::parse_binding(rest, lines[i].number));
        } else if (word == "model") {
            spec.models.push_back(detail::parse_model_block(lines, i));
        } else if (word == "note") {
            spec.notes.push_back(rest);
        } else {
            throw ParseError("unexpected directive '" + word + "' in tower file",
                             lines[i].number, 1);
        }
    }
    if (spec.name.empty()) throw CatalogError("tower file: missing 'tower NAME'");
    spec.tower = block.build();
    spec.radicand_exprs = std::move(block.radicands);
    spec.defines = std::move(block.defines);
    // defines must evaluate
    spec.environment();
    return spec;
}

inline SolutionRecord parse_record(const std::string &text, const TowerResolver &resolve) {
    auto lines = detail::split_lines(text);
    SolutionRecord rec;
    detail::TowerBlock inline_tower;
    bool has_inline = false;
    std::optional<ThetaParams> theta;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        auto [word, rest] = detail::split_word(lines[i].text);
        int ln = lines[i].number;
        if (word == "record") {
            rec.id = rest;
        } else if (word == "tower") {
            rec.tower_ref = rest;
        } else if (word == "base") {
            inline_tower.base = rest;
            has_inline = true;
        } else if (word == "radicand") {
            inline_tower.radicands.push_back(detail::parse_binding(rest, ln));
            has_inline = true;
        } else if (word == "define") {
            inline_tower.defines.push_back(detail::parse_binding(rest, ln));
            has_inline = true;
        } else if (word == "let") {
            rec.lets.push_back(detail::parse_binding(rest, ln));
        } else if (word == "theta") {
            std::istringstream in(rest);
            std::string q1, q2, q3, q4, extra;
            if (!(in >> q1 >> q2 >> q3 >> q4) || (in >> extra))
                throw ParseError("theta needs exactly four rationals", ln, 1);
            try {
                theta = ThetaParams{Rational::from_string(q1), Rational::from_string(q2),
                                    Rational::from_string(q3), Rational::from_string(q4)};
            } catch (const std::invalid_argument &e) {
                throw ParseError(e.what(), ln, 1);
            }
        } else if (word == "y" || word == "t") {
            std::string payload = rest;
            if (payload.empty() || payload[0] != '=')
                throw ParseError("'=' expected after '" + word + "'", ln, 1);
            ExprPtr expr = parse_expression(payload.substr(1), ln);
            (word == "y" ? rec.y_expr : rec.t_expr) = expr;
        } else if (word == "genus" || word == "degree") {
            int v = 0;
            try {
                std::size_t used = 0;
                v = std::stoi(rest, &used);
                if (used != rest.size() || v < 0) throw std::invalid_argument(rest);
            } catch (const std::exception &) {
                throw ParseError("nonnegative integer expected after '" + word + "'", ln, 1);
            }
            (word == "genus" ? rec.expected_genus : rec.expected_degree) = v;
        } else if (word == "parent") {
            rec.parent = rest;
        } else if (word == "sibling") {
            rec.sibling = rest;
        } else if (word == "theta-source") {
            if (rest != "stated" && rest != "derived")
                throw ParseError("theta-source must be 'stated' or 'derived'", ln, 1);
            rec.theta_source = rest;
        } else if (word == "note") {
            rec.notes.push_back(rest);
        } else {
            throw ParseError("unexpected directive '" + word + "' in record", ln, 1);
        }
    }
    if (rec.id.empty()) throw CatalogError("record: missing 'record ID'");
    if (!rec.tower_ref.empty() && has_inline)
        throw CatalogError("record '" + rec.id + "': both tower reference and inline tower");
    if (rec.tower_ref.empty() && !has_inline)
        throw CatalogError("record '" + rec.id + "': no tower");
    if (!theta) throw CatalogError("record '" + rec.id + "': missing theta");
    if (!rec.y_expr || !rec.t_expr)
        throw CatalogError("record '" + rec.id + "': missing y or t");

    if (has_inline) {
        rec.tower_spec.name = rec.id + "-tower";
        rec.tower_spec.tower = inline_tower.build();
        rec.tower_spec.radicand_exprs = inline_tower.radicands;
        rec.tower_spec.defines = inline_tower.defines;
    } else {
        rec.tower_spec = resolve(rec.tower_ref);
    }

    auto env = rec.tower_spec.environment();
    const TowerPtr &tw = rec.tower_spec.tower;
    auto lookup = [&](const std::string &n) -> FieldElement {
        auto it = env.find(n);
        if (it == env.end())
            throw CatalogError("record '" + rec.id + "': unknown symbol '" + n + "'");
        return it->second;
    };
    auto embed = [&](const Rational &q) { return FieldElement::constant(tw, q); };
    for (const auto &[name, expr] : rec.lets)
        env[name] = eval_expression<FieldElement>(expr, lookup, embed);

    rec.solution.tower = tw;
    rec.solution.y = eval_expression<FieldElement>(rec.y_expr, lookup, embed);
    rec.solution.t = eval_expression<FieldElement>(rec.t_expr, lookup, embed);
    rec.solution.theta = *theta;
    try {
        rec.solution.validate();
    } catch (const PviError &e) {
        throw CatalogError("record '" + rec.id + "': " + e.what());
    }
    return rec;
}

// ---------------------------------------------------------------------------
// Serialization: canonical formatting, stable across runs.

inline std::string serialize_model(const ModelPresentation &m) {
    std::string out;
    out += "model ";
    out += m.kind == ModelPresentation::Kind::Hyperelliptic ? "hyperelliptic" : "plane";
    out += " " + m.var1 + " " + m.var2 + "\n";
    if (m.relation_lhs)
        out += "  relation " + print_expression(m.relation_lhs) + " = " +
               print_expression(m.relation_rhs) + "\n";
    for (const auto &[n, e] : m.maps) out += "  map " + n + " = " + print_expression(e) + "\n";
    for (const auto &[n, e] : m.inverse_maps)
        out += "  inverse " + n + " = " + print_expression(e) + "\n";
    out += "end\n";
    return out;
}

inline std::string serialize_tower(const TowerSpec &spec) {
    std::string out = "tower " + spec.name + "\n";
    out += "base " + spec.tower->var() + "\n";
    for (const auto &[n, e] : spec.radicand_exprs)
        out += "radicand " + n + " = " + print_expression(e) + "\n";
    for (const auto &[n, e] : spec.defines)
        out += "define " + n + " = " + print_expression(e) + "\n";
    for (const auto &m : spec.models) out += serialize_model(m);
    for (const auto &n : spec.notes) out += "note " + n + "\n";
    return out;
}

inline std::string serialize_record(const SolutionRecord &rec) {
    std::string out = "record " + rec.id + "\n";
    if (!rec.tower_ref.empty()) {
        out += "tower " + rec.tower_ref + "\n";
    } else {
        out += "base " + rec.tower_spec.tower->var() + "\n";
        for (const auto &[n, e] : rec.tower_spec.radicand_exprs)
            out += "radicand " + n + " = " + print_expression(e) + "\n";
        for (const auto &[n, e] : rec.tower_spec.defines)
            out += "define " + n + " = " + print_expression(e) + "\n";
    }
    for (const auto &[n, e] : rec.lets) out += "let " + n + " = " + print_expression(e) + "\n";
    out += "theta " + rec.solution.theta.str() + "\n";
    out += "y = " + print_expression(rec.y_expr) + "\n";
    out += "t = " + print_expression(rec.t_expr) + "\n";
    if (rec.expected_genus >= 0) out += "genus " + std::to_string(rec.expected_genus) + "\n";
    if (rec.expected_degree >= 0) out += "degree " + std::to_string(rec.expected_degree) + "\n";
    if (!rec.parent.empty()) out += "parent " + rec.parent + "\n";
    if (!rec.sibling.empty()) out += "sibling " + rec.sibling + "\n";
    out += "theta-source " + rec.theta_source + "\n";
    for (const auto &n : rec.notes) out += "note " + n + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// Directory loader: *.tower files first, then *.record files.

struct Catalog {
    std::map<std::string, TowerSpec> towers;
    std::map<std::string, SolutionRecord> records;
    std::vector<std::string> record_order;

    const SolutionRecord &record(const std::string &id) const {
        auto it = records.find(id);
        if (it == records.end()) throw CatalogError("no record '" + id + "' in catalog");
        return it->second;
    }
    const TowerSpec &tower(const std::string &name) const {
        auto it = towers.find(name);
        if (it == towers.end()) throw CatalogError("no tower '" + name + "' in catalog");
        return it->second;
    }
};

inline std::string read_text_file(const std::filesystem::path &p) {
    std::ifstream in(p);
    if (!in) throw CatalogError("cannot open '" + p.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Catalog load_catalog(const std::filesystem::path &dir) {
    Catalog cat;
    if (!std::filesystem::is_directory(dir))
        throw CatalogError("catalog directory '" + dir.string() + "' not found");
    std::vector<std::filesystem::path> tower_files, record_files;
    for (const auto &entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        if (entry.path().extension() == ".tower") tower_files.push_back(entry.path());
        if (entry.path().extension() == ".record") record_files.push_back(entry.path());
    }
    std::sort(tower_files.begin(), tower_files.end());
    std::sort(record_files.begin(), record_files.end());
    for (const auto &p : tower_files) {
        TowerSpec spec = parse_tower(read_text_file(p));
        cat.towers[spec.name] = spec;
    }
    for (const auto &p : record_files) {
        SolutionRecord rec = parse_record(read_text_file(p), [&](const std::string &name) {
            return cat.tower(name);
        });
        cat.record_order.push_back(rec.id);
        cat.records[rec.id] = std::move(rec);
    }
    return cat;
}

}  // namespace pvi
