// rigidkit command-line front end. Exit codes: 0 analysis completed, 1 input
// or usage error, 2 internal inconsistency.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "rigidkit/bodybar.hpp"
#include "rigidkit/catalog.hpp"
#include "rigidkit/errors.hpp"
#include "rigidkit/json_io.hpp"
#include "rigidkit/moves.hpp"
#include "rigidkit/svg.hpp"
#include "rigidkit/towers.hpp"
#include "rigidkit/version.hpp"

using namespace rigidkit;

namespace {

struct Common {
    std::string norm;
    std::uint64_t seed = 0;
    int trials = 3;
    double tol = kRankEps;
    std::string out;
};

std::string read_input(const std::string& path) {
    if (path.empty() || path == "-") {
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
}

Json header(const Common& c, const std::optional<NormSpec>& n) {
    Json j;
    j["tool"] = "rigidkit";
    j["version"] = kVersion;
    j["norm"] = n ? Json(n->str()) : Json(nullptr);
    j["seed"] = c.seed;
    j["trials"] = c.trials;
    j["tol"] = num(c.tol);
    return j;
}

void merge(Json& into, const Json& from) {
    for (const auto& [k, v] : from.items()) into[k] = v;
}

NormSpec norm_or(const Common& c, const std::optional<NormSpec>& fallback, int defaultD = 2) {
    if (!c.norm.empty()) return NormSpec::parse(c.norm);
    if (fallback) return *fallback;
    return NormSpec(defaultD, 2);
}

SparsityCount parse_count(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) throw InputError("--count takes k,l");
    try {
        SparsityCount c{std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
        check_count(c);
        return c;
    } catch (const InputError&) {
        throw;
    } catch (const std::exception&) {
        throw InputError("--count takes two integers k,l");
    }
}

Json verdict_json(const GenericVerdict& v, const SimpleGraph& g, const NormSpec& n) {
    Json j = to_json(v.report, g, n.d());
    j["genericRank"] = v.genericRank;
    j["rigid"] = v.rigid;
    j["probabilistic"] = v.probabilistic;
    j["exactRank"] = v.exactRank ? Json(*v.exactRank) : Json(nullptr);
    j["combinatorialRigid"] = v.combinatorialRigid ? Json(*v.combinatorialRigid) : Json(nullptr);
    return j;
}

int run(int argc, char** argv) {
    CLI::App app{"rigidkit: rigidity of bar-joint and body-bar frameworks in l_q norms"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1, 1);
    Common c;
    auto common = [&](CLI::App* s) {
        s->add_option("--norm", c.norm, "norm as d=<int>,q=<rational>");
        s->add_option("--seed", c.seed, "seed for randomized steps");
        s->add_option("--trials", c.trials, "random placements tried")->check(CLI::PositiveNumber);
        s->add_option("--tol", c.tol, "rank / residual tolerance")->check(CLI::PositiveNumber);
        s->add_option("-o,--output", c.out, "output path (stdout when absent)");
    };

    std::string input;
    bool generic = false, exact = false;
    auto* analyze = app.add_subcommand("analyze", "flex report of a framework");
    common(analyze);
    analyze->add_option("input", input, "framework JSON (stdin when absent)");
    analyze->add_flag("--generic", generic, "use random placements instead of the given one");
    analyze->add_flag("--exact", exact, "confirm generic ranks exactly (integer q)");

    std::string count = "2,3";
    bool brute = false;
    auto* sparsity = app.add_subcommand("sparsity", "(k,l)-sparsity report");
    common(sparsity);
    sparsity->add_option("input", input, "graph JSON (stdin when absent)");
    sparsity->add_option("--count", count, "k,l");
    sparsity->add_flag("--brute", brute, "also run the exhaustive check (|V| <= 12)");

    std::string mode, from, to, verify;
    auto* chain = app.add_subcommand("chain", "construction chains between tight graphs");
    common(chain);
    chain->add_option("--mode", mode, "euclidean | qnorm")->required();
    chain->add_option("--from", from, "start graph JSON");
    chain->add_option("--to", to, "target graph JSON");
    chain->add_option("--verify", verify, "chain JSON to replay and check");

    std::string towerMode = "relative";
    auto* tower = app.add_subcommand("tower", "rigidity of a tower-presented graph");
    common(tower);
    tower->add_option("input", input, "tower JSON (stdin when absent)");
    tower->add_option("--mode", towerMode, "relative | laman | sequential");

    bool special = false;
    double eps = 1e-2;
    auto* bodybar = app.add_subcommand("bodybar", "multi-body graph analysis");
    common(bodybar);
    bodybar->add_option("input", input, "multi-body JSON, or {\"stages\":[...]} for a tower");
    bodybar->add_flag("--special", special, "build the special placement (non-Euclidean, tight)");
    bodybar->add_option("--eps", eps, "special placement displacement");

    std::string family;
    std::vector<std::string> params;
    std::string placementMode = "none";
    bool withMeta = false, asTower = false;
    auto* catalog = app.add_subcommand("catalog", "generate a named example family");
    common(catalog);
    catalog->add_option("family", family, "family name, or 'list'")->required();
    catalog->add_option("--params,-p", params, "key=value (repeatable, or comma separated)");
    catalog->add_option("--placement", placementMode, "none | canonical");
    catalog->add_flag("--with-meta", withMeta, "include family metadata");
    catalog->add_flag("--tower", asTower, "emit the family's stages as a tower");

    int flexIndex = 1;
    auto* render = app.add_subcommand("render", "SVG of a 2D framework with a flex");
    common(render);
    render->add_option("input", input, "framework JSON (stdin when absent)");
    render->add_option("--flex", flexIndex, "1-based nontrivial flex to draw, 0 for none")->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if (analyze->parsed()) {
        Framework f = framework_from_json(parse_json_text(read_input(input)));
        int defaultD = f.placement ? f.placement->dim() : 2;
        NormSpec n = norm_or(c, f.norm, defaultD);
        Json j = header(c, n);
        if (generic || !f.placement) {
            j["mode"] = "generic";
            merge(j, verdict_json(is_rigid_generic(f.graph, n, c.trials, c.seed, exact), f.graph, n));
        } else {
            if (f.placement->dim() != n.d()) throw InputError("placement dimension does not match the norm");
            j["mode"] = "placement";
            check_placement(f.graph, *f.placement, n.d());
            FlexReport r = flex_report(f.graph, *f.placement, n, c.tol);
            merge(j, to_json(r, f.graph, n.d()));
            if (f.exactPlacement && n.integer_q()) {
                int er = exact_rank(exact_rigidity_matrix(f.graph, *f.exactPlacement, n));
                j["exactRank"] = er;
                if (er != r.rank) throw InconsistencyError("numeric rank " + std::to_string(r.rank) + " but exact rank " + std::to_string(er));
            }
        }
        emit(j.dump(2) + "\n", c.out);
        return 0;
    }
    if (sparsity->parsed()) {
        SimpleGraph g = graph_from_json(parse_json_text(read_input(input)));
        SparsityCount k = parse_count(count);
        Json j = header(c, std::nullopt);
        j["count"] = {k.k, k.l};
        SparsityReport r = is_sparse(g, k);
        merge(j, to_json(r, g));
        if (brute) {
            SparsityReport b = brute_force_sparse(g, k);
            if (b.sparse != r.sparse || b.tight != r.tight)
                throw InconsistencyError("pebble game and exhaustive check disagree");
            j["bruteForceAgrees"] = true;
        }
        emit(j.dump(2) + "\n", c.out);
        return 0;
    }
    if (chain->parsed()) {
        ChainMode m = chain_mode_from_string(mode);
        Json j = header(c, std::nullopt);
        j["mode"] = to_string(m);
        ConstructionChain ch;
        if (!verify.empty()) {
            Json in = parse_json_text(read_input(verify));
            // Output of an earlier `chain` run: keep only the chain itself.
            if (in.is_object() && in.value("tool", "") == "rigidkit") {
                if (in.value("mode", "") != to_string(m)) throw InputError("chain was found in mode " + in.value("mode", std::string("?")));
                in = Json{{"start", in.at("start")}, {"moves", in.at("moves")}};
            }
            ch = chain_from_json(in);
        } else {
            if (from.empty() || to.empty()) throw InputError("chain needs --from and --to, or --verify");
            SimpleGraph a = graph_from_json(parse_json_text(read_input(from)));
            SimpleGraph b = graph_from_json(parse_json_text(read_input(to)));
            ch = find_chain(a, b, m);
        }
        ChainVerification v = verify_chain(ch, m);
        merge(j, to_json(ch));
        j["verified"] = true;
        j["stages"] = v.stages;
        j["final"] = to_json(v.finalGraph);
        emit(j.dump(2) + "\n", c.out);
        return 0;
    }
    if (tower->parsed()) {
        Tower t = tower_from_json(parse_json_text(read_input(input)));
        NormSpec n = norm_or(c, std::nullopt);
        Json j = header(c, n);
        j["mode"] = towerMode;
        auto graphs = [](const std::vector<SimpleGraph>& gs) {
            Json a = Json::array();
            for (const auto& g : gs) a.push_back(to_json(g));
            return a;
        };
        if (towerMode == "relative") {
            TowerVerdict v = tower_rigidity(t, n, c.seed);
            j["status"] = to_string(v.status);
            j["scope"] = v.scope;
            j["relativelyRigidPrefix"] = v.relativelyRigidPrefix;
            j["finalStageRigid"] = v.finalStageRigid;
            j["pairs"] = Json::array();
            for (const auto& p : v.pairs)
                j["pairs"].push_back({{"index", p.index}, {"preconditionMet", p.preconditionMet}, {"relativelyRigid", p.relativelyRigid}});
            j["sequentialWitness"] = v.sequentialWitness ? graphs(*v.sequentialWitness) : Json(nullptr);
        } else if (towerMode == "laman") {
            LamanTowerVerdict v = laman_tower_decide(t, n);
            j["status"] = to_string(v.status);
            j["witness"] = graphs(v.witness);
            j["witnessStages"] = v.witnessStages;
        } else if (towerMode == "sequential") {
            auto w = sequential_rigidity_2d(t, n, c.seed);
            j["sequential"] = w.has_value();
            j["containers"] = w ? graphs(*w) : Json(nullptr);
        } else {
            throw InputError("tower --mode is relative, laman or sequential");
        }
        emit(j.dump(2) + "\n", c.out);
        return 0;
    }
    if (bodybar->parsed()) {
        Json in = parse_json_text(read_input(input));
        NormSpec n = norm_or(c, std::nullopt);
        Json j = header(c, n);
        if (in.is_object() && in.contains("stages")) {
            if (in.size() != 1) throw InputError("a body-bar tower has only the field 'stages'");
            std::vector<MultiBodyGraph> stages;
            for (const auto& s : in["stages"]) stages.push_back(multibody_from_json(s, n, c.seed));
            BodyBarTowerVerdict v = bodybar_tower_decide(stages, n);
            j["status"] = to_string(v.status);
            j["witness"] = Json::array();
            for (const auto& w : v.witness) j["witness"].push_back(to_json(w));
            j["witnessStages"] = v.witnessStages;
            j["relativelyRigidPairs"] = v.relativelyRigidPairs ? Json(*v.relativelyRigidPairs) : Json(nullptr);
            emit(j.dump(2) + "\n", c.out);
            return 0;
        }
        MultiBodyGraph m = multibody_from_json(in, n, c.seed);
        MultiGraph bb = body_bar_graph(m);
        j["bodyBarGraph"] = to_json(bb);
        TayVerdict t = tay_decide(m, n, c.seed);
        j["k"] = t.k;
        j["rigid"] = t.rigid;
        j["witness"] = t.witness ? to_json(*t.witness) : Json(nullptr);
        j["numericRigid"] = t.numericRigid ? Json(*t.numericRigid) : Json(nullptr);
        const int need = n.euclidean() ? n.d() * (n.d() + 1) : 2 * n.d();
        j["essentiallyIndependent"] =
            m.underlying.num_vertices() >= need ? Json(essentially_independent(m, n, c.seed)) : Json(nullptr);
        const bool tightDD = !n.euclidean() && is_sparse(bb, SparsityCount{n.d(), n.d()}).tight;
        if (tightDD) j["trees"] = nash_williams_trees(bb, n.d());
        if (special) {
            SpecialPlacement sp = special_placement(m, n, eps, c.seed);
            Json s;
            s["eps"] = num(sp.eps);
            s["retries"] = sp.retries;
            s["nullity"] = sp.report.nullity;
            s["flexDim"] = sp.report.flexDim;
            s["remodeled"] = to_json(sp.remodeled);
            s["placement"] = to_json(sp.placement, sp.remodeled.underlying);
            j["specialPlacement"] = s;
        }
        emit(j.dump(2) + "\n", c.out);
        return 0;
    }
    if (catalog->parsed()) {
        if (family == "list") {
            Json j = Json::array();
            for (const auto& f : catalog_families())
                j.push_back({{"name", f.name}, {"params", f.params}, {"summary", f.summary}});
            emit(j.dump(2) + "\n", c.out);
            return 0;
        }
        std::map<std::string, std::string> kv;
        for (const auto& p : params) {
            std::stringstream ss(p);
            std::string item;
            while (std::getline(ss, item, ',')) {
                auto eq = item.find('=');
                if (eq == std::string::npos) {
                    // "holes=4,5" splits into "holes=4" and "5": continue the previous list.
                    if (kv.empty()) throw InputError("parameter '" + item + "' is not key=value");
                    auto& last = kv.rbegin()->second;
                    last += "," + item;
                    continue;
                }
                kv[item.substr(0, eq)] = item.substr(eq + 1);
            }
        }
        if (placementMode != "none" && placementMode != "canonical") throw InputError("--placement is none or canonical");
        CatalogEntry e = generate(family, kv);
        if (placementMode == "none") {
            e.placement.reset();
            e.exactPlacement.reset();
        } else if (!e.placement) {
            throw InputError("family " + family + " has no canonical placement");
        }
        Json j;
        if (asTower) {
            if (!e.tower) throw InputError("family " + family + " has no stages");
            j = to_json(*e.tower);
        } else {
            j = to_json(e, withMeta);
        }
        emit(j.dump(2) + "\n", c.out);
        return 0;
    }
    if (render->parsed()) {
        Framework f = framework_from_json(parse_json_text(read_input(input)));
        if (!f.placement) throw InputError("render needs a placement");
        NormSpec n = norm_or(c, f.norm, f.placement->dim());
        if (n.d() != 2 || f.placement->dim() != 2) throw InputError("render draws 2D frameworks only");
        std::optional<Velocity> u;
        if (flexIndex > 0) {
            FlexReport r = flex_report(f.graph, *f.placement, n, c.tol);
            if (flexIndex > r.flexDim)
                throw InputError("framework has " + std::to_string(r.flexDim) + " nontrivial flexes; --flex " + std::to_string(flexIndex) +
                                 " is out of range");
            u = Velocity(r.nontrivialFlexBasis.col(flexIndex - 1));
        }
        emit(render_svg(f.graph, *f.placement, u), c.out);
        return 0;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const InputError& e) {
        std::cerr << "rigidkit: input error: " << e.what() << "\n";
        return 1;
    } catch (const InconsistencyError& e) {
        std::cerr << "rigidkit: inconsistency: " << e.what() << "\n";
        return 2;
    } catch (const AlgorithmError& e) {
        std::cerr << "rigidkit: algorithm failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "rigidkit: internal error: " << e.what() << "\n";
        return 2;
    }
}
