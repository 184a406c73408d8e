#include <chrono>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>

#include <shellcx/witness.hpp>

using namespace shellcx;

namespace {

enum Exit { ok = 0, negative = 1, usage = 2, budget = 3 };

std::string digest(const std::string& text)
{
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream o;
    o << std::hex << std::setw(16) << std::setfill('0') << h;
    return o.str();
}

struct Report {
    std::string command;
    std::string input_digest;
    std::string verdict;
    std::string witness_path;
    double seconds = 0;
    long long nodes = 0;
    std::string budget_status = "within";
    json details = json::object();

    void print(bool as_json) const
    {
        if (as_json) {
            json j{{"command", command}, {"input_digest", input_digest}, {"verdict", verdict},
                   {"wall_time_s", seconds}, {"nodes", nodes},           {"budget", budget_status}};
            if (!witness_path.empty()) j["witness_path"] = witness_path;
            for (const auto& [k, v] : details.items()) j[k] = v;
            std::cout << j.dump() << '\n';
            return;
        }
        std::cout << "command: " << command << '\n';
        if (!input_digest.empty()) std::cout << "input: " << input_digest << '\n';
        for (const auto& [k, v] : details.items()) std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
        if (!verdict.empty()) std::cout << "verdict: " << verdict << '\n';
        if (!witness_path.empty()) std::cout << "witness: " << witness_path << '\n';
        std::cout << "nodes: " << nodes << '\n' << "budget: " << budget_status << '\n';
        std::cout << "time: " << std::fixed << std::setprecision(3) << seconds << "s\n";
    }
};

std::string fvec(const FVector& f)
{
    std::string s = "(";
    for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + std::to_string(f[i]);
    return s + ")";
}

void write_output(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-")
        std::cout << text;
    else
        write_file(path, text);
}

std::string complex_text(const LabeledComplex& lc, const std::string& format)
{
    if (format == "facets") return write_facet_list(lc.complex);
    return dump_json(lc);
}

int verdict_exit(Verdict v) { return v == Verdict::yes ? ok : v == Verdict::no ? negative : budget; }

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Simplicial complex toolkit: collapsibility, shellability and the 3-SAT reduction"};
    app.require_subcommand(1);
    bool as_json = false;
    std::uint64_t seed = 0;
    int jobs = 1;
    long long node_budget = default_budget;
    app.add_flag("--json", as_json, "Machine-readable report");
    app.add_option("--seed", seed, "Seed for randomized generation");
    app.add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--budget", node_budget, "Search node budget")->check(CLI::PositiveNumber);

    std::string input, witness_in, out_path, format = "json", property, gadget_name;
    int kval = -1, times = 1, nvars = 3, nclauses = 3;
    bool sd2 = false, no_prechecks = false, full_sweep = false, list = false;

    auto* stats = app.add_subcommand("stats", "f-vector, reduced Euler characteristic, purity, links");
    stats->add_option("complex", input, "Facet list or JSON complex")->required();

    auto* check = app.add_subcommand("check", "Decide a property and write a witness on success");
    check->add_option("complex", input)->required();
    check->add_option("--property", property, "shellable | collapsible | k-decomposable | hachimori-sd2")
        ->required()
        ->check(CLI::IsMember({"shellable", "collapsible", "k-decomposable", "hachimori-sd2"}));
    check->add_option("-k", kval, "Shedding dimension for k-decomposable");
    check->add_option("-w,--witness", out_path, "Witness output path");
    check->add_flag("--no-prechecks", no_prechecks, "Skip necessary-condition tests before shellability search");

    auto* reduce = app.add_subcommand("reduce", "Build K_phi from a DIMACS 3-CNF");
    reduce->add_option("cnf", input)->required();
    reduce->add_option("-o,--output", out_path, "Output path (stdout if omitted)");
    reduce->add_option("--format", format)->check(CLI::IsMember({"json", "facets"}));
    reduce->add_flag("--sd2", sd2, "Emit the second barycentric subdivision");

    auto* verify = app.add_subcommand("verify", "Replay a witness");
    verify->add_option("complex", input)->required();
    verify->add_option("witness", witness_in)->required();

    auto* solve = app.add_subcommand("solve-sat", "Decide a 3-CNF through collapsibility of K_phi");
    solve->add_option("cnf", input)->required();
    solve->add_option("-c,--certificate", out_path, "Certificate output path");
    solve->add_flag("--full-sweep", full_sweep, "Try every removal set, not only one triangle per sphere");

    auto* gadget = app.add_subcommand("gadget", "Dump a gadget or fixture mesh");
    gadget->add_option("name", gadget_name);
    gadget->add_option("-o,--output", out_path);
    gadget->add_option("--format", format)->check(CLI::IsMember({"json", "facets"}));
    gadget->add_flag("--list", list, "List available names");

    auto* subdivide = app.add_subcommand("subdivide", "Barycentric subdivision");
    subdivide->add_option("complex", input)->required();
    subdivide->add_option("--times", times)->check(CLI::PositiveNumber);
    subdivide->add_option("-o,--output", out_path);
    subdivide->add_option("--format", format)->check(CLI::IsMember({"json", "facets"}));

    auto* gen = app.add_subcommand("random-cnf", "Random 3-CNF in DIMACS format (uses --seed)");
    gen->add_option("--vars", nvars)->check(CLI::PositiveNumber);
    gen->add_option("--clauses", nclauses)->check(CLI::NonNegativeNumber);
    gen->add_option("-o,--output", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    const auto t0 = std::chrono::steady_clock::now();
    Report rep;
    auto finish = [&](int code) {
        rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        rep.print(as_json);
        return code;
    };

    try {
        if (*stats) {
            rep.command = "stats";
            rep.input_digest = digest(read_file(input));
            const Complex k = load_complex(input).complex;
            rep.details["dimension"] = k.dim();
            rep.details["f_vector"] = fvec(k.f_vector());
            rep.details["reduced_euler_characteristic"] = k.reduced_euler_characteristic();
            rep.details["pure"] = k.is_pure();
            rep.details["pseudomanifold"] = k.is_pure() && k.dim() >= 0 ? to_string(k.pseudomanifold()) : "no";
            auto bad = disconnected_links(k);
            rep.details["vertex_links_connected"] = bad.empty();
            if (!bad.empty()) rep.details["disconnected_links_at"] = bad;
            rep.details["free_faces"] = free_faces(k).size();
            return finish(ok);
        }
        if (*check) {
            rep.command = "check " + property;
            rep.input_digest = digest(read_file(input));
            const Complex k = load_complex(input).complex;
            json w;
            int code = negative;
            if (property == "shellable") {
                ShellOptions o;
                o.budget = node_budget;
                o.prechecks = !no_prechecks;
                auto r = decide_shellable(k, o);
                rep.nodes = r.nodes;
                rep.verdict = to_string(r.verdict);
                if (!r.reason.empty()) rep.details["reason"] = r.reason;
                if (r) w = shelling_witness(r.order);
                code = verdict_exit(r.verdict);
            } else if (property == "collapsible") {
                CollapseResult r = k.dim() <= 2 ? is_collapsible_2d_greedy(k) : is_collapsible_dfs(k, node_budget);
                rep.nodes = r.nodes;
                rep.verdict = to_string(r.verdict);
                if (r) {
                    CollapseState st(std::make_shared<FaceGraph>(k));
                    for (const auto& p : r.witness) st.apply(p);
                    w = collapse_witness(r.witness, st.current());
                }
                code = verdict_exit(r.verdict);
            } else if (property == "k-decomposable") {
                if (kval < 0) throw CLI::ValidationError("-k", "k-decomposable needs -k");
                auto r = decide_k_decomposable(k, kval, node_budget);
                rep.nodes = r.nodes;
                rep.verdict = to_string(r.verdict);
                if (r) w = decomposition_witness(kval, r.tree);
                code = verdict_exit(r.verdict);
            } else {
                HachimoriOptions o;
                o.budget = node_budget;
                o.jobs = jobs;
                auto r = hachimori_decide_sd2(k, o);
                rep.nodes = r.tried;
                rep.verdict = to_string(r.status);
                if (!r.reason.empty()) rep.details["reason"] = r.reason;
                if (r.status == HachimoriStatus::shellable) {
                    rep.details["removed"] = describe_faces(r.removed);
                    CollapseState st(std::make_shared<FaceGraph>(without_facets(k, r.removed)));
                    for (const auto& p : r.witness) st.apply(p);
                    w = collapse_witness(r.witness, st.current());
                    w["removed"] = r.removed;
                    code = ok;
                } else {
                    code = r.status == HachimoriStatus::not_shellable ? negative : budget;
                }
            }
            if (code == budget) rep.budget_status = "exceeded";
            if (code == ok && !w.is_null()) {
                if (out_path.empty()) out_path = input + ".witness.json";
                write_file(out_path, w.dump() + "\n");
                rep.witness_path = out_path;
            }
            return finish(code);
        }
        if (*reduce) {
            rep.command = "reduce";
            const std::string text = read_file(input);
            rep.input_digest = digest(text);
            const Formula phi = parse_cnf(text);
            LabeledComplex k = build_K_phi(phi);
            rep.details["variables"] = phi.n;
            rep.details["clauses"] = phi.clauses.size();
            rep.details["simplices"] = k.complex.num_simplices();
            rep.details["reduced_euler_characteristic"] = k.complex.reduced_euler_characteristic();
            if (sd2) {
                auto s = barycentric_subdivision(k.complex, 2);
                LabeledComplex out;
                out.complex = s.complex;
                for (const auto& [v, c] : s.carrier) out.names[v] = describe_faces({c});
                k = std::move(out);
                rep.details["sd2_simplices"] = k.complex.num_simplices();
            }
            const std::string text_out = complex_text(k, format);
            if (out_path.empty()) {
                std::cout << text_out;
                return ok;
            }
            write_file(out_path, text_out);
            rep.witness_path = out_path;
            rep.verdict = "written";
            return finish(ok);
        }
        if (*verify) {
            rep.command = "verify";
            rep.input_digest = digest(read_file(input));
            const LabeledComplex lc = load_complex(input);
            json w;
            try {
                w = json::parse(read_file(witness_in));
            } catch (const json::parse_error& e) {
                throw ParseError(0, std::string("invalid witness JSON: ") + e.what());
            }
            WitnessCheck r;
            try {
                r = verify_witness(lc, w);
            } catch (const json::exception& e) {
                throw ParseError(0, std::string("malformed witness: ") + e.what());
            }
            rep.verdict = r.ok ? "valid" : "invalid";
            rep.details["message"] = r.message;
            if (r.failing_index >= 0) rep.details["failing_index"] = r.failing_index;
            return finish(r.ok ? ok : negative);
        }
        if (*solve) {
            rep.command = "solve-sat";
            const std::string text = read_file(input);
            rep.input_digest = digest(text);
            const Formula phi = parse_cnf(text);
            PhiOptions o;
            o.jobs = jobs;
            o.full_sweep = full_sweep;
            const LabeledComplex k = build_K_phi(phi);
            auto r = decide_phi_via_complex(phi, o, &k);
            rep.nodes = r.tried;
            rep.verdict = r.sat ? "sat" : "unsat";
            if (phi.n <= sat_oracle_max_vars) {
                const bool oracle = sat_oracle(phi).has_value();
                rep.details["oracle"] = oracle ? "sat" : "unsat";
                if (oracle != r.sat) {
                    std::cerr << "disagreement with the exhaustive oracle\n" << to_dimacs(phi);
                    std::cerr << "removal: " << describe_faces(r.removal) << '\n';
                    return finish(usage);
                }
            }
            if (r.sat) {
                rep.details["removal"] = describe_faces(r.removal);
                if (r.assignment) {
                    rep.details["assignment"] = assignment_to_json(*r.assignment);
                    if (!out_path.empty()) {
                        auto sched = r.witness;
                        CollapseState st(std::make_shared<FaceGraph>(without_facets(k.complex, r.removal)));
                        for (const auto& p : sched) st.apply(p);
                        const Vertex last = st.alive_facets().front().front();
                        write_file(out_path, reduction_certificate(phi, r.removal, r.witness, last, *r.assignment).dump() + "\n");
                        rep.witness_path = out_path;
                    }
                } else {
                    rep.details["note"] = "collapsible removal is not one triangle per sphere";
                }
            }
            return finish(r.sat ? ok : negative);
        }
        if (*gadget) {
            rep.command = "gadget";
            std::map<std::string, std::function<LabeledComplex()>> makers{
                {"one-house", [] { return build_one_house(); }},
                {"three-house", [] { return build_three_house(); }},
                {"variable-sphere", [] { return build_variable_sphere(); }},
                {"O", [] { return build_O(); }},
            };
            for (auto& [n, lc] : fixtures()) makers[n] = [lc] { return lc; };
            if (list || gadget_name.empty()) {
                for (const auto& [n, f] : makers) std::cout << n << '\n';
                return list ? ok : usage;
            }
            auto it = makers.find(gadget_name);
            if (it == makers.end()) throw CLI::ValidationError("name", "unknown gadget " + gadget_name);
            write_output(out_path, complex_text(it->second(), format));
            return ok;
        }
        if (*subdivide) {
            const LabeledComplex lc = load_complex(input);
            auto s = barycentric_subdivision(lc.complex, times);
            LabeledComplex out;
            out.complex = s.complex;
            for (const auto& [v, c] : s.carrier) out.names[v] = describe_faces({c});
            write_output(out_path, complex_text(out, format));
            return ok;
        }
        if (*gen) {
            std::mt19937_64 rng(seed);
            write_output(out_path, to_dimacs(random_formula(nvars, nclauses, rng)));
            return ok;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return usage;
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return usage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    }
    return usage;
}
