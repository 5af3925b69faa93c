#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rcover/covering.hpp"
#include "rcover/expansion.hpp"
#include "rcover/ivmatch.hpp"
#include "rcover/oracle.hpp"
#include "rcover/planar.hpp"
#include "rcover/reduction.hpp"

using namespace rcover;
using json = nlohmann::json;

namespace {

struct Global {
    bool json = false;
    bool deterministic = false;
    int jobs = 1;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

int exit_code(Verdict v) { return v == Verdict::Yes ? 0 : v == Verdict::No ? 1 : 2; }

std::string group_line(const Automorphism& a) {
    std::ostringstream out;
    out << "v:";
    for (int x : a.vmap) out << " " << x;
    out << " | h:";
    for (int x : a.hmap) out << " " << x;
    return out.str();
}

int cmd_cover(const Global& gl, const std::string& gp, const std::string& hp, const std::string& cert,
              bool fast_only, long budget) {
    auto g = read_graph_file(gp), h = read_graph_file(hp);
    CoverOptions o;
    if (budget > 0) o.budget = budget;
    auto t0 = std::chrono::steady_clock::now();
    auto r = fast_only ? fast_paths(g, h, o) : regular_cover(g, h, o);
    long ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    if (r.verdict == Verdict::Yes && !cert.empty()) spit(cert, write_certificate(r.group, r.iso));
    if (gl.json) {
        json j{{"status", to_string(r.verdict)},
               {"k", r.k},
               {"route", r.route},
               {"why", r.why},
               {"branches_tried", r.stats.subgroups},
               {"cores_tried", r.stats.list_reductions},
               {"quotient_classes", r.stats.quotient_classes},
               {"star_combinations", r.stats.star_combinations},
               {"certificate_leaves", r.stats.certificate_leaves},
               {"list_misses", r.stats.list_misses}};
        if (!gl.deterministic) j["wall_ms"] = ms;
        if (!cert.empty() && r.verdict == Verdict::Yes) j["certificate"] = cert;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << to_string(r.verdict);
        if (r.k) std::cout << " k=" << r.k;
        if (!r.route.empty()) std::cout << " route=" << r.route;
        if (!r.why.empty()) std::cout << " (" << r.why << ")";
        std::cout << "\n";
        if (r.verdict == Verdict::Yes && cert.empty()) std::cout << write_certificate(r.group, r.iso);
    }
    return exit_code(r.verdict);
}

int cmd_quotients(const Global& gl, const std::string& gp, bool dedup, int k) {
    auto g = read_graph_file(gp);
    json all = json::array();
    int n = 0;
    enumerate_quotients(g, dedup, [&](const QuotientItem& q) {
        int order = static_cast<int>(q.group.size());
        if (k > 0 && order != k) return true;
        ++n;
        if (gl.json) {
            all.push_back({{"k", order}, {"graph", serialize_graph(q.h)}});
        } else {
            std::cout << "# quotient " << n << " k=" << order << "\n" << serialize_graph(q.h) << "--\n";
            std::cout.flush();
        }
        return true;
    });
    if (gl.json) std::cout << json{{"count", n}, {"quotients", all}}.dump(2) << "\n";
    else std::cout << "# " << n << " quotient(s)" << (dedup ? " up to isomorphism" : "") << "\n";
    return 0;
}

int cmd_verify(const Global& gl, const std::string& gp, const std::string& hp, const std::string& cp) {
    auto g = read_graph_file(gp), h = read_graph_file(hp);
    std::string text = slurp(cp);
    bool is_cert = text.find("g ") != std::string::npos;
    bool ok;
    std::string kind, why;
    if (is_cert) {
        PermutationGroup group;
        VertexMapping iso;
        parse_certificate(text, g, group, iso);
        auto c = certificate_check(g, h, group, iso);
        ok = c.ok;
        why = c.why;
        kind = ok ? "regular-covering" : "rejected";
    } else {
        auto rep = verify_covering(g, h, parse_mapping(text));
        ok = rep.kind != CoverKind::NotCovering;
        kind = rep.kind == CoverKind::RegularCovering ? "regular-covering"
               : rep.kind == CoverKind::Covering     ? "covering"
                                                     : "not-covering";
        why = rep.why;
    }
    if (gl.json) std::cout << json{{"status", kind}, {"why", why}}.dump(2) << "\n";
    else std::cout << kind << (why.empty() ? "" : " (" + why + ")") << "\n";
    return ok ? 0 : 1;
}

int cmd_aut(const Global& gl, const std::string& gp, bool elements, bool use_oracle) {
    auto g = read_graph_file(gp);
    auto t0 = std::chrono::steady_clock::now();
    auto group = use_oracle ? oracle::aut_bruteforce(g) : automorphisms(g);
    long ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    if (gl.json) {
        json j{{"order", group.size()}};
        if (!gl.deterministic) j["wall_ms"] = ms;
        if (elements) {
            j["elements"] = json::array();
            for (const auto& a : group) j["elements"].push_back({{"v", a.vmap}, {"h", a.hmap}});
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "order " << group.size() << "\n";
        if (elements)
            for (const auto& a : group) std::cout << group_line(a) << "\n";
    }
    return 0;
}

int cmd_reduce(const Global& gl, const std::string& gp) {
    auto g = read_graph_file(gp);
    Catalog cat;
    auto s = reduction_series(normalize(g).graph, cat);
    if (gl.json) std::cout << json{{"levels", s.r()}, {"series", s.describe()}, {"catalog", cat.dump()}}.dump(2) << "\n";
    else std::cout << s.describe() << "\n" << cat.dump();
    return 0;
}

int cmd_oracle(const Global& gl, const std::string& what, const std::vector<std::string>& files) {
    auto need = [&](size_t n) {
        if (files.size() != n) throw CLI::ValidationError("oracle " + what, "expects " + std::to_string(n) + " graph file(s)");
    };
    if (what == "aut") {
        need(1);
        auto group = oracle::aut_bruteforce(read_graph_file(files[0]));
        if (gl.json) std::cout << json{{"order", group.size()}}.dump(2) << "\n";
        else std::cout << "order " << group.size() << "\n";
        return 0;
    }
    if (what == "subgroups") {
        need(1);
        auto subs = oracle::semiregular_subgroups_bruteforce(read_graph_file(files[0]));
        std::vector<size_t> orders;
        for (const auto& s : subs) orders.push_back(s.size());
        if (gl.json) std::cout << json{{"count", subs.size()}, {"orders", orders}}.dump(2) << "\n";
        else {
            std::cout << subs.size() << " semiregular subgroup(s); orders";
            for (auto o : orders) std::cout << " " << o;
            std::cout << "\n";
        }
        return 0;
    }
    if (what == "quotients") {
        need(1);
        auto qs = oracle::quotient_set_bruteforce(read_graph_file(files[0]));
        if (gl.json) {
            json a = json::array();
            for (const auto& q : qs) a.push_back(serialize_graph(q));
            std::cout << json{{"count", qs.size()}, {"quotients", a}}.dump(2) << "\n";
        } else {
            for (const auto& q : qs) std::cout << serialize_graph(q) << "--\n";
            std::cout << "# " << qs.size() << " quotient(s)\n";
        }
        return 0;
    }
    if (what == "cover") {
        need(2);
        auto g = read_graph_file(files[0]), h = read_graph_file(files[1]);
        auto c = oracle::regular_cover_bruteforce(g, h);
        if (gl.json) std::cout << json{{"status", c ? "yes" : "no"}}.dump(2) << "\n";
        else {
            std::cout << (c ? "yes" : "no") << "\n";
            if (c) std::cout << write_certificate(c->group, c->iso);
        }
        return c ? 0 : 1;
    }
    throw CLI::ValidationError("oracle", "unknown query '" + what + "' (aut, subgroups, quotients, cover)");
}

int cmd_ivmatch(const Global& gl, const std::string& path, bool brute, long cap) {
    auto inst = iv::parse_instance(slurp(path));
    auto f = iv::flow_feasibility(inst);
    iv::SolveStats st;
    auto s = iv::solve(inst, &st, cap);
    std::optional<bool> b;
    if (brute) b = iv::brute_force(inst).has_value();
    if (gl.json) {
        json j{{"status", s ? "yes" : "no"},
               {"flow_feasible", f.feasible},
               {"b", f.b},
               {"b_prime", f.bp},
               {"nodes", st.nodes},
               {"matchings", st.matchings}};
        if (!f.why.empty()) j["flow_why"] = f.why;
        if (s) j["edges"] = s->edges;
        if (b) j["brute_force"] = *b ? "yes" : "no";
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "flow " << (f.feasible ? "feasible" : "infeasible (" + f.why + ")") << "\n";
        std::cout << (s ? "yes" : "no") << " nodes=" << st.nodes << " matchings=" << st.matchings << "\n";
        if (s)
            for (auto [u, v] : s->edges) std::cout << "e " << u << " " << v << "\n";
        if (b) std::cout << "brute-force " << (*b ? "yes" : "no") << "\n";
    }
    return s ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"regular covers of planar graphs"};
    app.require_subcommand(1);
    Global gl;
    app.add_flag("--json", gl.json, "machine-readable output");
    app.add_flag("--deterministic", gl.deterministic, "omit timings so equal inputs give equal bytes");
    app.add_option("--jobs", gl.jobs, "worker threads (the search runs serially)")->check(CLI::PositiveNumber);

    std::string gp, hp, cp, cert, what, ip;
    std::vector<std::string> files;
    bool fast_only = false, dedup = false, elements = false, use_oracle = false, brute = false;
    long budget = 0, cap = 1L << 22;
    int k = 0;

    auto* cover = app.add_subcommand("cover", "decide whether G regularly covers H");
    cover->add_option("G", gp)->required()->check(CLI::ExistingFile);
    cover->add_option("H", hp)->required()->check(CLI::ExistingFile);
    cover->add_option("--certificate", cert, "write the certificate to this file");
    cover->add_flag("--fast-paths-only", fast_only, "only the polynomial special cases");
    cover->add_option("--budget", budget, "search budget")->check(CLI::PositiveNumber);

    auto* quot = app.add_subcommand("quotients", "list the regular quotients of G");
    quot->add_option("G", gp)->required()->check(CLI::ExistingFile);
    quot->add_flag("--dedup", dedup, "one quotient per isomorphism class");
    quot->add_option("-k", k, "only quotients by groups of this order")->check(CLI::PositiveNumber);

    auto* ver = app.add_subcommand("verify", "check a certificate or a covering projection");
    ver->add_option("G", gp)->required()->check(CLI::ExistingFile);
    ver->add_option("H", hp)->required()->check(CLI::ExistingFile);
    ver->add_option("certificate", cp, "certificate (g/m lines) or mapping (m lines)")->required()->check(CLI::ExistingFile);

    auto* aut = app.add_subcommand("aut", "automorphism group of G");
    aut->add_option("G", gp)->required()->check(CLI::ExistingFile);
    aut->add_flag("--elements", elements, "print every element");
    aut->add_flag("--oracle", use_oracle, "use the brute-force oracle");

    auto* red = app.add_subcommand("reduce", "reduction series and catalog of G");
    red->add_option("G", gp)->required()->check(CLI::ExistingFile);

    auto* orc = app.add_subcommand("oracle", "brute-force reference: aut, subgroups, quotients, cover");
    orc->add_option("query", what)->required();
    orc->add_option("graphs", files)->required()->check(CLI::ExistingFile);

    auto* ivm = app.add_subcommand("ivmatch", "solve an IV-Matching instance");
    ivm->add_option("instance", ip)->required()->check(CLI::ExistingFile);
    ivm->add_flag("--brute-force", brute, "cross-check with the brute-force solver");
    ivm->add_option("--node-cap", cap, "search node cap")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        if (*cover) return cmd_cover(gl, gp, hp, cert, fast_only, budget);
        if (*quot) return cmd_quotients(gl, gp, dedup, k);
        if (*ver) return cmd_verify(gl, gp, hp, cp);
        if (*aut) return cmd_aut(gl, gp, elements, use_oracle);
        if (*red) return cmd_reduce(gl, gp);
        if (*orc) return cmd_oracle(gl, what, files);
        if (*ivm) return cmd_ivmatch(gl, ip, brute, cap);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
