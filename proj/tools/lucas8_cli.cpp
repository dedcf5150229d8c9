#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "lucas8/json_io.hpp"

using namespace lucas8;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPartial = 2;
constexpr int kExitInvalid = 3;

void emit(const json& j, const std::string& out) {
    if (out.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write " + out);
    f << j.dump(2) << "\n";
}

json classify(int n, const Int& P, const Int& Q) {
    const LucasParams pq{P, Q};
    json j{{"n", n}, {"P", to_string(P)}, {"Q", to_string(Q)}};
    j["U_n"] = to_string(lucas_term(pq, n));
    j["degeneracy"] = to_string(degeneracy_class(pq));
    if (n < 8) {
        j["witness"] = to_json(classify_small(n, pq));
        j["square"] = j["witness"]["square"];
        return j;
    }
    j["square"] = is_perfect_square(lucas_term(pq, 8)).has_value();
    json ds = json::array();
    for (const auto& d : descents_for(pq))
        ds.push_back({{"eq", to_string(d.eq)}, {"a", to_string(d.a)}, {"b", to_string(d.b)}, {"c", to_string(d.c)}});
    j["descent"] = ds;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Squares in Lucas sequences U_n(P,Q), n <= 8"};
    app.require_subcommand(1);

    long p_max = 200, q_max = 200;
    int n_max = 50, workers = 1, precision = 5;
    unsigned float_digits = 50;
    double tol = 1e-6;
    std::string out, curve;
    bool with_heights = false, published_caps = false, with_search = false;

    auto* search = app.add_subcommand("search", "Scan coprime (P,Q) for square terms");
    search->add_option("--p-max", p_max, "Bound on |P|")->check(CLI::PositiveNumber);
    search->add_option("--q-max", q_max, "Bound on |Q|")->check(CLI::PositiveNumber);
    search->add_option("--n-max", n_max, "Largest index")->check(CLI::PositiveNumber);
    search->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    search->add_option("--out", out, "Write JSON here instead of stdout");

    auto* verify = app.add_subcommand("verify-theorem", "Run every driver and the descent back to (P,Q)");
    verify->add_option("--precision", precision, "3-adic precision k")->check(CLI::Range(3, 12));
    verify->add_option("--float-digits", float_digits, "Decimal digits for real computations")->check(CLI::Range(20u, 200u));
    verify->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    verify->add_option("--tol", tol, "Canonical height tolerance")->check(CLI::Range(5e-8, 1e-2));
    verify->add_flag("--with-heights", with_heights, "Also certify the generators");
    verify->add_flag("--with-search", with_search, "Attach a search over the --p-max/--q-max/--n-max box");
    verify->add_option("--p-max", p_max, "Search bound on |P|")->check(CLI::PositiveNumber);
    verify->add_option("--q-max", q_max, "Search bound on |Q|")->check(CLI::PositiveNumber);
    verify->add_option("--n-max", n_max, "Search index bound")->check(CLI::PositiveNumber);
    verify->add_option("--out", out, "Write JSON here instead of stdout");

    int cn = 0;
    std::string cp, cq;
    auto* cls = app.add_subcommand("classify", "Decide whether U_n(P,Q) is a square, with a witness");
    cls->add_option("n", cn, "Index 2..8")->required();
    cls->add_option("P", cp, "P")->required();
    cls->add_option("Q", cq, "Q")->required();
    cls->add_option("--out", out, "Write JSON here instead of stdout");

    auto* heights = app.add_subcommand("heights", "Height bounds and generator certificate for a curve");
    heights->add_option("--curve", curve, "Curve id, e.g. E1")->required();
    heights->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    heights->add_option("--tol", tol, "Canonical height tolerance")->check(CLI::Range(5e-8, 1e-2));
    heights->add_option("--float-digits", float_digits, "Decimal digits")->check(CLI::Range(20u, 200u));
    heights->add_flag("--published-caps", published_caps, "Search with the published H caps");
    heights->add_option("--out", out, "Write JSON here instead of stdout");

    auto* cat = app.add_subcommand("catalog", "List the curves");
    cat->add_option("--out", out, "Write JSON here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (*search) {
            emit(to_json(search_box(p_max, q_max, n_max, workers)), out);
            return kExitOk;
        }
        if (*verify) {
            TheoremOptions opt;
            opt.precision = precision;
            opt.float_digits = float_digits;
            opt.workers = workers;
            opt.with_heights = with_heights;
            opt.height_tol = tol;
            if (with_search) opt.search = search_box(p_max, q_max, n_max, workers);
            const auto cert = verify_theorem(opt);
            emit(to_json(cert), out);
            return cert.complete ? kExitOk : kExitPartial;
        }
        if (*cls) {
            if (cn < 2 || cn > 8) {
                std::cerr << "n must be in 2..8\n";
                return kExitInvalid;
            }
            Int P, Q;
            if (P.set_str(cp, 10) != 0 || Q.set_str(cq, 10) != 0) {
                std::cerr << "P and Q must be integers\n";
                return kExitInvalid;
            }
            emit(classify(cn, P, Q), out);
            return kExitOk;
        }
        if (*heights) {
            const CurveInstance* e = nullptr;
            for (const auto& c : catalog())
                if (c.id == curve) e = &c;
            if (!e || e->rank < 1) {
                std::cerr << "unknown curve or no generators: " << curve << "\n";
                return kExitInvalid;
            }
            CertifyOptions opt;
            opt.workers = workers;
            opt.height_tol = tol;
            opt.digits = float_digits;
            opt.published_caps = published_caps;
            const auto cert = certify_generators(*e, opt);
            emit(to_json(cert), out);
            return cert.conclusion ? kExitOk : kExitPartial;
        }
        if (*cat) {
            json j = json::array();
            for (const auto& e : catalog()) j.push_back(to_json(e));
            emit(j, out);
            return kExitOk;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitInvalid;
}
