#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "fdrm/constructions.hpp"
#include "fdrm/examples.hpp"
#include "fdrm/serialize.hpp"

using namespace fdrm;

namespace {

const char* kMethods[] = {"shorten", "mds-diag", "gab-subcode", "sys-mrd", "vandermonde"};

std::string optimal_string(const Certificate& cert) {
    switch (cert.optimal) {
        case Tri::yes:
            return "true";
        case Tri::no:
            return "false";
        default:
            return cert.distance_method == DistanceMethod::sampled ? "unknown(sampled)"
                                                                   : "unknown";
    }
}

void print_certificate(const RankCode& c, const Certificate& cert, const std::string& method) {
    std::cout << "k=" << cert.k_observed << " delta>=" << c.delta_claimed
              << " method=" << method << " optimal=" << optimal_string(cert) << "\n";
    std::cout << "distance_check=" << to_string(cert.distance_method)
              << " distance_observed=" << cert.distance_observed
              << " codewords=" << cert.distance_checked << " bound=" << cert.bound_value
              << "\n";
}

RankCode run_method(const std::string& method, const FerrersDiagram& f, u64 q,
                    std::size_t delta, long r) {
    if (method == "shorten") return shorten_to_diagram(f, delta, q);
    if (method == "mds-diag") return mds_diagonal_construct(f, delta, q);
    if (method == "gab-subcode")
        return r >= 0 ? construct_gab_subcode(f, delta, std::size_t(r), q)
                      : optimal_gab_subcode(f, delta, q);
    if (method == "sys-mrd") {
        std::size_t n = f.n(), k = n - delta + 1;
        auto pattern = sys_mrd_search(q, n, delta);
        if (!pattern) throw std::runtime_error("sys-mrd: no coefficient pattern exists");
        u64 deg = std::max<u64>(k * n - k * k + 2, f.m());
        auto g = sys_mrd_build(make_field_q(q, deg), *pattern);
        return construct_from_sys_mrd(g, *pattern, f);
    }
    if (method == "vandermonde") {
        u64 deg = std::max<u64>({vandermonde_min_m(f.n(), delta), f.n(), f.m()});
        auto g = vandermonde_mrd_build(make_field_q(q, deg), f.n(), delta);
        return construct_from_vandermonde(g, f);
    }
    throw CLI::ValidationError("method", "unknown method: " + method);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ferrers-diagram rank-metric code toolkit"};
    app.require_subcommand(1);

    std::string diagram_text, method, out_path, in_path, example_id;
    u64 q = 2;
    std::size_t delta = 1;
    long r = -1;
    u64 budget = kDefaultDistanceBudget;
    unsigned workers = 1;

    auto* cmd_bound = app.add_subcommand("bound", "dimension bound for a diagram");
    cmd_bound->add_option("--diagram", diagram_text, "cols:... profile or ./* grid")
        ->required();
    cmd_bound->add_option("--delta", delta, "minimum rank distance")->required();

    auto* cmd_construct = app.add_subcommand("construct", "build a code and certify it");
    cmd_construct->add_option("--diagram", diagram_text)->required();
    cmd_construct->add_option("--delta", delta)->required();
    cmd_construct->add_option("--method", method)->required();
    cmd_construct->add_option("--q", q, "base field size");
    cmd_construct->add_option("--r", r, "column-extension width (gab-subcode)");
    cmd_construct->add_option("--budget", budget, "codeword enumeration budget");
    cmd_construct->add_option("--workers", workers, "verification worker threads");
    cmd_construct->add_option("--out", out_path, "write the code document here");

    auto* cmd_verify = app.add_subcommand("verify", "re-check a code document");
    cmd_verify->add_option("--in", in_path, "code document path")->required();
    cmd_verify->add_option("--budget", budget);
    cmd_verify->add_option("--workers", workers);

    auto* cmd_example = app.add_subcommand("example", "reproduce a registered example");
    cmd_example->add_option("id", example_id)->required();
    cmd_example->add_option("--budget", budget);
    cmd_example->add_option("--workers", workers);
    cmd_example->add_option("--out", out_path, "write the code document here");

    auto* cmd_list = app.add_subcommand("list", "available methods and examples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_bound->parsed()) {
            auto f = parse_diagram(diagram_text);
            auto b = singleton_like_bound(f, delta);
            std::cout << "v=[";
            for (std::size_t i = 0; i < b.v.size(); ++i)
                std::cout << (i ? "," : "") << b.v[i];
            std::cout << "] kmax=" << b.k_max << "\n";
            return 0;
        }
        if (cmd_construct->parsed()) {
            auto f = parse_diagram(diagram_text);
            RankCode c = run_method(method, f, q, delta, r);
            Certificate cert = certify(c, f, delta, budget, workers);
            print_certificate(c, cert, method);
            if (!out_path.empty()) {
                std::ofstream out(out_path, std::ios::binary);
                if (!out) throw std::runtime_error("cannot open " + out_path);
                out << serialize_code(c);
            }
            return 0;
        }
        if (cmd_verify->parsed()) {
            std::ifstream in(in_path, std::ios::binary);
            if (!in) throw std::runtime_error("cannot open " + in_path);
            std::ostringstream buf;
            buf << in.rdbuf();
            auto doc = parse_code_document(buf.str());
            RankCode c = to_rank_code(doc);
            if (doc.k_header != c.k()) {
                std::cout << "FAIL dimension: header k=" << doc.k_header << " but "
                          << c.k() << " basis matrices\n";
                return 1;
            }
            Certificate cert = certify(c, doc.diagram, doc.delta, budget, workers);
            if (!cert.independent) {
                std::cout << "FAIL independence: basis matrices are linearly dependent\n";
                return 1;
            }
            if (!cert.support_ok) {
                std::cout << "FAIL support: a basis matrix has entries off the diagram\n";
                return 1;
            }
            if (cert.distance_observed < doc.delta) {
                std::cout << "FAIL distance: found a nonzero codeword of rank "
                          << cert.distance_observed << " < " << doc.delta << "\n";
                return 1;
            }
            print_certificate(c, cert, "verify");
            std::cout << "OK\n";
            return 0;
        }
        if (cmd_example->parsed()) {
            const ExampleSpec* ex = find_example(example_id);
            if (!ex) {
                std::cerr << "unknown example: " << example_id << "\n";
                return 2;
            }
            RankCode c = ex->build();
            Certificate cert = certify(c, ex->diagram, ex->delta, budget, workers);
            print_certificate(c, cert, ex->id);
            bool ok = cert.k_observed == ex->expected_k && cert.independent &&
                      cert.support_ok && cert.distance_observed >= ex->delta &&
                      cert.bound_value == ex->expected_k;
            if (ex->expect_exhaustive)
                ok = ok && cert.distance_method == DistanceMethod::exhaustive &&
                     cert.optimal == Tri::yes;
            if (!out_path.empty()) {
                std::ofstream out(out_path, std::ios::binary);
                if (!out) throw std::runtime_error("cannot open " + out_path);
                out << serialize_code(c);
            }
            std::cout << (ok ? "PASS" : "FAIL") << "\n";
            return ok ? 0 : 1;
        }
        if (cmd_list->parsed()) {
            std::cout << "methods:";
            for (const char* m : kMethods) std::cout << " " << m;
            std::cout << "\nexamples:";
            for (const auto& ex : example_registry()) std::cout << " " << ex.id;
            std::cout << "\n";
            for (const auto& ex : example_registry())
                std::cout << "  " << ex.id << ": " << ex.summary << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
