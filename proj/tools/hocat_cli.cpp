#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hocat/chain.hpp"
#include "hocat/json_io.hpp"
#include "hocat/tabular.hpp"
#include "hocat/two_category.hpp"

using namespace hocat;
using nlohmann::json;

namespace {

constexpr int kTrue = 0;
constexpr int kFalse = 1;
constexpr int kInputError = 2;

struct Options {
    std::string instance;
    std::string format = "json";
    std::uint64_t seed = 0;
    std::size_t bound = kDefaultGermBound;
    std::size_t samples = 20;
    std::string kind;
    std::string system = "cof-trivfib";
    std::string object, target, morphism, f, g, left, right;
};

struct Result {
    json body;
    int code = kTrue;
};

enum class Kind { Tabular, ChainComplex, ChainMap, ChainProblem };

Kind detect(const json& j) {
    if (!j.is_object()) throw InvalidInput("input must be a JSON object");
    if (j.contains("objects")) return Kind::Tabular;
    if (j.contains("degrees")) return Kind::ChainComplex;
    if (j.contains("source")) return Kind::ChainMap;
    if (j.contains("f")) return Kind::ChainProblem;
    throw InvalidInput("cannot tell the instance kind of the input");
}

const char* kind_name(Kind k) {
    switch (k) {
        case Kind::Tabular: return "tabular";
        case Kind::ChainComplex: return "chain complex";
        case Kind::ChainMap: return "chain map";
        case Kind::ChainProblem: return "chain problem";
    }
    return "";
}

json require_input(const Options& o) {
    if (o.instance.empty()) throw InvalidInput("--instance is required");
    return read_json_file(o.instance);
}

void require_kind(Kind got, std::initializer_list<Kind> allowed, const std::string& what) {
    for (auto k : allowed)
        if (k == got) return;
    throw InvalidInput(what + " does not accept a " + kind_name(got));
}

const std::string& require_opt(const std::string& v, const char* flag) {
    if (v.empty()) throw InvalidInput(std::string(flag) + " is required");
    return v;
}

FactorSystem parse_system(const std::string& s) {
    if (s == "cof-trivfib") return FactorSystem::CofThenTrivFib;
    if (s == "trivcof-fib") return FactorSystem::TrivCofThenFib;
    throw InvalidInput("--system must be cof-trivfib or trivcof-fib");
}

json flags_json(const ClassFlags& f) { return {{"we", f.is_we}, {"fib", f.is_fib}, {"cof", f.is_cof}}; }

int code_of(const Diagnostics& d) { return d.ok() ? kTrue : kFalse; }

// ---- tabular helpers ----

// "d0,d1,s,x,h": W and Z are read off d0 and s, f = h d0 and g = h d1.
Homotopy<TabularInstance> tab_homotopy(const TabularInstance& c, const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ',');) parts.push_back(p);
    if (parts.size() != 5) throw InvalidInput("homotopy must be given as d0,d1,s,x,h");
    auto d0 = c.morphism(parts[0]), d1 = c.morphism(parts[1]), s = c.morphism(parts[2]);
    auto x = c.morphism(parts[3]), h = c.morphism(parts[4]);
    auto C = make_cylinder(c, c.dom(d0), c.cod(d0), c.cod(s), d0, d1, s, x);
    auto f = c.try_compose(h, d0), g = c.try_compose(h, d1);
    if (!f || !g) throw InvalidInput("h is not composable with d0 and d1");
    Homotopy<TabularInstance> H{C, h, *f, *g};
    auto d = validate_homotopy(c, H);
    if (!d.ok()) throw InvalidInput("not a homotopy: " + d.failures().front());
    return H;
}

json tab_factorization(const TabularInstance& c, const Factorization<TabMorphism>& fa) {
    return {{"left", c.name_of(fa.left)}, {"right", c.name_of(fa.right)}, {"middle", c.name_of(c.cod(fa.left))}};
}

// ---- chain helpers ----

struct ChainProblem {
    ChainMap f, g;
    std::optional<ChainHomotopy> k1, k2;
};

GradedMap graded_from_json(const ChainComplex& X, const ChainComplex& Y, int degree, const json& j) {
    if (!j.is_array()) throw InvalidInput("homotopy components must be an array");
    std::vector<Matrix> comps;
    for (std::size_t n = 0; n < X.length(); ++n) {
        long dn = static_cast<long>(n);
        json m = n < j.size() ? j[n] : json::array();
        comps.push_back(matrix_from_json(X.modulus(), Y.dim(dn + degree), X.dim(dn), m));
    }
    return GradedMap(X, Y, degree, comps);
}

ChainProblem chain_problem(const json& j) {
    ChainProblem p{chain_map_from_json(j.at("f")), chain_map_from_json(j.at("g")), {}, {}};
    if (!(p.f.source() == p.g.source()) || !(p.f.target() == p.g.target()))
        throw InvalidInput("f and g must be parallel");
    if (j.contains("k1")) p.k1 = graded_from_json(p.f.source(), p.f.target(), 1, j.at("k1"));
    if (j.contains("k2")) p.k2 = graded_from_json(p.f.source(), p.f.target(), 1, j.at("k2"));
    return p;
}

Homotopy<ChainInstance> chain_homotopy(const ChainInstance& c, const ChainProblem& p, const ChainHomotopy& k) {
    if (!(hom_differential(k) == p.f.graded() - p.g.graded()))
        throw InvalidInput("k is not a chain homotopy f - g = dk + kd");
    return c.homotopy_from_chain(p.f, p.g, k);
}

ChainInstance chain_for(const ChainComplex& X) { return ChainInstance(X.modulus()); }

// ---- validate ----

Result validate_tabular(const json& j) {
    auto c = TabularInstance::from_json(j);
    auto r = validate(c);
    return {to_json(c, r), r.valid() ? kTrue : kFalse};
}

Result validate_chain(const json& j, Kind k, const Options& o) {
    ChainComplex X = k == Kind::ChainComplex ? chain_complex_from_json(j) : chain_map_from_json(j).source();
    auto c = chain_for(X);
    Diagnostics d;
    json out{{"instance", "chain"}, {"p", X.modulus()}};
    if (k == Kind::ChainMap) {
        auto f = chain_map_from_json(j);
        out["classes"] = flags_json(c.classify(f));
        for (auto sys : {FactorSystem::CofThenTrivFib, FactorSystem::TrivCofThenFib})
            d.add(std::string("factorization ") + to_string(sys) + " is valid",
                  factorization_valid(c, f, c.factorize(f, sys)));
    }
    d.append(validate_cylinder(c, c.standard_cylinder(X)));
    d.append(validate_path_object(c, c.standard_path(X)));
    out["homology"] = homology_dims(X);
    // Sampled endomorphisms: classes obey 3 for 2 and factorizations recompose.
    std::mt19937_64 rng(o.seed);
    std::size_t sampled = 0;
    try {
        auto maps = enumerate_chain_maps(X, X, 1u << 12);
        std::uniform_int_distribution<std::size_t> pick(0, maps.size() - 1);
        for (std::size_t t = 0; t < o.samples; ++t) {
            const auto& f = maps[pick(rng)];
            const auto& g = maps[pick(rng)];
            int we = int(c.classify(f).is_we) + int(c.classify(g).is_we) + int(c.classify(c.compose(g, f)).is_we);
            d.add("3 for 2 on a sampled pair", we != 2);
            for (auto sys : {FactorSystem::CofThenTrivFib, FactorSystem::TrivCofThenFib})
                d.add("sampled factorization is valid", factorization_valid(c, f, c.factorize(f, sys)));
            ++sampled;
        }
    } catch (const InvalidInput&) {
        // Hom set too large to enumerate; the structural checks above still apply.
    }
    out["samples"] = sampled;
    out["valid"] = d.ok();
    out["checks"] = to_json(d);
    return {out, code_of(d)};
}

Result run_validate(const Options& o, const std::string& path) {
    auto j = read_json_file(path);
    auto k = detect(j);
    if (k == Kind::Tabular) return validate_tabular(j);
    require_kind(k, {Kind::ChainComplex, Kind::ChainMap}, "validate");
    return validate_chain(j, k, o);
}

// ---- compute ----

Result compute_homology(const json& j, Kind k) {
    require_kind(k, {Kind::ChainComplex}, "homology");
    auto X = chain_complex_from_json(j);
    return {{{"homology", homology_dims(X)}, {"complex", to_json(X)}}, kTrue};
}

Result compute_factorize(const json& j, Kind k, const Options& o) {
    auto sys = parse_system(o.system);
    if (k == Kind::Tabular) {
        auto c = TabularInstance::from_json(j);
        auto f = c.morphism(require_opt(o.morphism, "--morphism"));
        auto fa = c.factorize(f, sys);
        Diagnostics d;
        d.add("right left = f", factorization_valid(c, f, fa));
        auto out = tab_factorization(c, fa);
        out["checks"] = to_json(d);
        return {out, code_of(d)};
    }
    require_kind(k, {Kind::ChainMap}, "factorize");
    auto f = chain_map_from_json(j);
    auto c = chain_for(f.source());
    auto fa = c.factorize(f, sys);
    Diagnostics d;
    d.add("right left = f and classes match", factorization_valid(c, f, fa));
    return {{{"system", to_string(sys)}, {"left", to_json(fa.left)}, {"right", to_json(fa.right)},
             {"checks", to_json(d)}},
            code_of(d)};
}

Result compute_replace(const json& j, Kind k, const Options& o) {
    if (k == Kind::Tabular) {
        auto c = TabularInstance::from_json(j);
        Replacement<TabularInstance> rep(c);
        auto X = c.object(require_opt(o.object, "--object"));
        auto r = rep.object(X);
        auto d = rep.check_object(X);
        return {{{"X", c.name_of(X)},
                 {"QX", c.name_of(r.QX)},
                 {"p", c.name_of(r.p)},
                 {"RX", c.name_of(r.RX)},
                 {"v", c.name_of(r.v)},
                 {"rX", c.name_of(r.rX)},
                 {"checks", to_json(d)}},
                code_of(d)};
    }
    require_kind(k, {Kind::ChainComplex}, "replace");
    auto X = chain_complex_from_json(j);
    auto c = chain_for(X);
    Replacement<ChainInstance> rep(c);
    auto r = rep.object(X);
    auto d = rep.check_object(X);
    return {{{"QX", to_json(r.QX)},
             {"p", to_json(r.p)},
             {"RX", to_json(r.RX)},
             {"v", to_json(r.v)},
             {"checks", to_json(d)}},
            code_of(d)};
}

Result compute_q_cylinder(const json& j, Kind k, const Options& o) {
    if (k == Kind::Tabular) {
        auto c = TabularInstance::from_json(j);
        auto C = q_cylinder_for(c, c.object(require_opt(o.object, "--object")));
        auto d = validate_cylinder(c, C);
        return {{{"cylinder", to_json(c, C)}, {"checks", to_json(d)}}, code_of(d)};
    }
    require_kind(k, {Kind::ChainComplex}, "q-cylinder");
    auto X = chain_complex_from_json(j);
    auto c = chain_for(X);
    auto C = q_cylinder_for(c, X);
    auto d = validate_cylinder(c, C);
    return {{{"cylinder", to_json(c, C)}, {"checks", to_json(d)}}, code_of(d)};
}

Result compute_split_we(const json& j, Kind k, const Options& o) {
    if (k == Kind::Tabular) {
        auto c = TabularInstance::from_json(j);
        auto s = c.morphism(require_opt(o.morphism, "--morphism"));
        auto w = split_we(c, s);
        auto d = validate_split_we(c, s, w);
        return {{{"i", c.name_of(w.i)},
                 {"p", c.name_of(w.p)},
                 {"retraction", c.name_of(w.retraction)},
                 {"section", c.name_of(w.section)},
                 {"checks", to_json(d)}},
                code_of(d)};
    }
    require_kind(k, {Kind::ChainMap}, "split-we");
    auto s = chain_map_from_json(j);
    auto c = chain_for(s.source());
    auto w = split_we(c, s);
    auto d = validate_split_we(c, s, w);
    return {{{"i", to_json(w.i)},
             {"p", to_json(w.p)},
             {"retraction", to_json(w.retraction)},
             {"section", to_json(w.section)},
             {"checks", to_json(d)}},
            code_of(d)};
}

Result compute_pi0_quotient(const json& j, Kind k, const Options& o) {
    if (k == Kind::Tabular) {
        auto c = TabularInstance::from_json(j);
        TabularOracle orc(c);
        HomotopyTwoCategory<TabularInstance, TabularOracle> ho(c, orc);
        auto classes = ho.pi0_quotient(c.object(require_opt(o.object, "--object")),
                                       c.object(require_opt(o.target, "--target")));
        json out = json::array();
        for (const auto& cls : classes) {
            json names = json::array();
            for (auto f : cls) names.push_back(c.name_of(f));
            out.push_back(names);
        }
        return {{{"classes", out}, {"count", classes.size()}}, kTrue};
    }
    require_kind(k, {Kind::ChainComplex}, "pi0-quotient");
    auto X = chain_complex_from_json(j);
    auto Y = o.target.empty() ? X : chain_complex_from_json(read_json_file(o.target));
    auto c = chain_for(X);
    ChainOracle orc(c);
    HomotopyTwoCategory<ChainInstance, ChainOracle> ho(c, orc);
    auto classes = ho.pi0_quotient(X, Y);
    json out = json::array();
    for (const auto& cls : classes) {
        json maps = json::array();
        for (const auto& f : cls) maps.push_back(to_json(f));
        out.push_back(maps);
    }
    return {{{"classes", out}, {"count", classes.size()}}, kTrue};
}

Result run_compute(const Options& o) {
    auto j = require_input(o);
    auto k = detect(j);
    Result r;
    if (o.kind == "homology") r = compute_homology(j, k);
    else if (o.kind == "factorize") r = compute_factorize(j, k, o);
    else if (o.kind == "replace") r = compute_replace(j, k, o);
    else if (o.kind == "q-cylinder") r = compute_q_cylinder(j, k, o);
    else if (o.kind == "split-we") r = compute_split_we(j, k, o);
    else if (o.kind == "pi0-quotient") r = compute_pi0_quotient(j, k, o);
    else throw InvalidInput("unknown compute kind: " + o.kind);
    r.body["kind"] = o.kind;
    return r;
}

// ---- decide ----

Result decide_classify(const json& j, Kind k, const Options& o) {
    if (k == Kind::Tabular) {
        auto c = TabularInstance::from_json(j);
        auto f = c.morphism(require_opt(o.morphism, "--morphism"));
        return {{{"answer", true}, {"classes", flags_json(c.classify(f))}}, kTrue};
    }
    require_kind(k, {Kind::ChainMap}, "classify");
    auto f = chain_map_from_json(j);
    auto flags = chain_for(f.source()).classify(f);
    json out{{"answer", true}, {"classes", flags_json(flags)}};
    out["homology_source"] = homology_dims(f.source());
    out["homology_target"] = homology_dims(f.target());
    return {out, kTrue};
}

Result answer(bool yes, json witness, std::size_t searched) {
    json out{{"answer", yes}};
    if (yes) out["witness"] = std::move(witness);
    else out["searched"] = searched;
    return {out, yes ? kTrue : kFalse};
}

Result decide_pi0(const json& j, Kind k, const Options& o) {
    if (k == Kind::Tabular) {
        auto c = TabularInstance::from_json(j);
        TabularOracle orc(c);
        HomotopyTwoCategory<TabularInstance, TabularOracle> ho(c, orc);
        auto f = c.morphism(require_opt(o.f, "--f")), g = c.morphism(require_opt(o.g, "--g"));
        if (!(c.dom(f) == c.dom(g)) || !(c.cod(f) == c.cod(g))) throw InvalidInput("f and g must be parallel");
        auto w = ho.pi0_witness(f, g);
        return answer(w.has_value(), w ? to_json(c, *w) : json(), c.homotopies(f, g).size());
    }
    require_kind(k, {Kind::ChainProblem}, "pi0");
    auto p = chain_problem(j);
    auto c = chain_for(p.f.source());
    ChainOracle orc(c);
    HomotopyTwoCategory<ChainInstance, ChainOracle> ho(c, orc);
    auto w = ho.pi0_witness(p.f, p.g);
    // The null-homotopy system is solved exactly; a negative answer covers
    // the whole space of degree-one maps.
    std::size_t space = 0;
    for (std::size_t n = 0; n < p.f.source().length(); ++n)
        space += p.f.target().dim(static_cast<long>(n) + 1) * p.f.source().dim(static_cast<long>(n));
    json wit;
    if (w) wit = {{"chain_homotopy", to_json(c.extract_homotopy(*w))}};
    return answer(w.has_value(), wit, space);
}

Result decide_two_cells(const json& j, Kind k, const Options& o) {
    if (k == Kind::Tabular) {
        auto c = TabularInstance::from_json(j);
        TabularOracle orc(c);
        auto a = tab_homotopy(c, require_opt(o.left, "--left"));
        auto b = tab_homotopy(c, require_opt(o.right, "--right"));
        if (!(a.f == b.f) || !(a.g == b.g)) throw InvalidInput("homotopies have different endpoints");
        bool eq = orc.equal(a, b);
        return answer(eq, json{{"left", to_json(c, a)}, {"right", to_json(c, b)}}, orc.homotopy_count());
    }
    require_kind(k, {Kind::ChainProblem}, "two-cells-equal");
    auto p = chain_problem(j);
    if (!p.k1 || !p.k2) throw InvalidInput("k1 and k2 are required");
    auto c = chain_for(p.f.source());
    ChainOracle orc(c);
    auto a = chain_homotopy(c, p, *p.k1), b = chain_homotopy(c, p, *p.k2);
    auto w = orc.witness(a, b);
    std::size_t space = 0;
    for (std::size_t n = 0; n < p.f.source().length(); ++n)
        space += p.f.target().dim(static_cast<long>(n) + 2) * p.f.source().dim(static_cast<long>(n));
    return answer(w.has_value(), w ? json{{"k", to_json(*w)}} : json(), space);
}

template <class I>
json zig_zag_json(const I& c, const std::vector<ZigZagStep<I>>& path) {
    json out = json::array();
    for (const auto& st : path) {
        json step{{"upward", st.upward}};
        if constexpr (std::is_same_v<I, TabularInstance>) {
            step["map"] = to_json(c, st.edge.map);
        } else {
            step["phi"] = to_json(st.edge.map.phi);
            step["psi"] = to_json(st.edge.map.psi);
        }
        out.push_back(step);
    }
    return out;
}

Result decide_germ(const json& j, Kind k, const Options& o) {
    if (k == Kind::Tabular) {
        auto c = TabularInstance::from_json(j);
        auto a = tab_homotopy(c, require_opt(o.left, "--left"));
        auto b = tab_homotopy(c, require_opt(o.right, "--right"));
        if (!(a.f == b.f) || !(a.g == b.g)) throw InvalidInput("homotopies have different endpoints");
        auto res = germ_search(c, a, b, o.bound);
        auto r = answer(res.found, json{{"path", zig_zag_json(c, res.path)}}, res.explored);
        r.body["exhaustive"] = res.exhaustive;
        return r;
    }
    require_kind(k, {Kind::ChainProblem}, "germ");
    auto p = chain_problem(j);
    if (!p.k1 || !p.k2) throw InvalidInput("k1 and k2 are required");
    auto c = chain_for(p.f.source());
    auto a = chain_homotopy(c, p, *p.k1), b = chain_homotopy(c, p, *p.k2);
    auto res = germ_search(c, a, b, o.bound);
    auto r = answer(res.found, json{{"path", zig_zag_json(c, res.path)}}, res.explored);
    r.body["exhaustive"] = res.exhaustive;
    r.body["bound"] = o.bound;
    return r;
}

Result run_decide(const Options& o) {
    auto j = require_input(o);
    auto k = detect(j);
    Result r;
    if (o.kind == "classify") r = decide_classify(j, k, o);
    else if (o.kind == "pi0") r = decide_pi0(j, k, o);
    else if (o.kind == "two-cells-equal") r = decide_two_cells(j, k, o);
    else if (o.kind == "germ") r = decide_germ(j, k, o);
    else throw InvalidInput("unknown decide kind: " + o.kind);
    r.body["kind"] = o.kind;
    return r;
}

json error_json(const std::string& kind, const std::string& message) {
    return {{"error", {{"kind", kind}, {"message", message}}}};
}

int emit(const json& j, int code) {
    std::cout << j.dump(2) << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Homotopy 2-category toolkit"};
    app.require_subcommand(1);
    Options o;
    std::string validate_path;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json"}));
        sub->add_option("--seed", o.seed, "Seed for sampled checks");
        sub->add_option("--bound", o.bound, "Germ search bound");
    };

    auto* val = app.add_subcommand("validate", "Validate a tabular fixture or chain complex/map file");
    val->add_option("path", validate_path, "Input file");
    val->add_option("--instance", validate_path, "Input file");
    val->add_option("--samples", o.samples, "Sampled endomorphism pairs (chain)");
    common(val);

    auto* comp = app.add_subcommand("compute", "Compute a construction with its checks");
    comp->add_option("kind", o.kind, "homology|factorize|replace|q-cylinder|split-we|pi0-quotient")->required();
    comp->add_option("--instance", o.instance, "Input file")->required();
    comp->add_option("--system", o.system, "cof-trivfib or trivcof-fib");
    comp->add_option("--object", o.object, "Tabular object");
    comp->add_option("--target", o.target, "Tabular target object, or chain complex file");
    comp->add_option("--morphism", o.morphism, "Tabular morphism");
    common(comp);

    auto* dec = app.add_subcommand("decide", "Decide a question and print a certificate");
    dec->add_option("kind", o.kind, "classify|pi0|two-cells-equal|germ")->required();
    dec->add_option("--instance", o.instance, "Input file")->required();
    dec->add_option("--morphism", o.morphism, "Tabular morphism");
    dec->add_option("--f", o.f, "Tabular morphism f");
    dec->add_option("--g", o.g, "Tabular morphism g");
    dec->add_option("--left", o.left, "Tabular homotopy d0,d1,s,x,h");
    dec->add_option("--right", o.right, "Tabular homotopy d0,d1,s,x,h");
    common(dec);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        return emit(json{{"help", app.help()}}, kTrue);
    } catch (const CLI::ParseError& e) {
        return emit(error_json("usage", e.what()), kInputError);
    }

    try {
        Result r;
        if (*val) {
            if (validate_path.empty()) throw InvalidInput("an input path is required");
            r = run_validate(o, validate_path);
        } else if (*comp) {
            r = run_compute(o);
        } else {
            r = run_decide(o);
        }
        return emit(r.body, r.code);
    } catch (const InvalidInput& e) {
        return emit(error_json("input", e.what()), kInputError);
    } catch (const nlohmann::json::exception& e) {
        return emit(error_json("input", e.what()), kInputError);
    } catch (const PreconditionFailed& e) {
        return emit(error_json("precondition", e.what()), kFalse);
    } catch (const NoLift& e) {
        return emit(error_json("no-lift", e.what()), kFalse);
    }
}
