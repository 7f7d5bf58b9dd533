#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "qhankel/asym.hpp"
#include "qhankel/errors.hpp"
#include "qhankel/hankel.hpp"
#include "qhankel/qseq.hpp"
#include "qhankel/report.hpp"
#include "qhankel/verify.hpp"

namespace {

using namespace qhankel;

struct IoOpts {
    std::string format = "json";
    std::string out;
};

void add_io(CLI::App* sub, IoOpts& io) {
    sub->add_option("--format", io.format, "output format: json, csv or text")
        ->default_str("json");
    sub->add_option("--out", io.out,
                    "output file (written atomically); default stdout");
}

void emit(const nlohmann::ordered_json& doc, const IoOpts& io) {
    write_output(render(doc, parse_format(io.format)), io.out);
}

// Builds the symbolic/rational sequence context from CLI strings, echoing
// the effective configuration.
SeqContext make_context(const std::string& alpha_s, const std::string& lambda_s,
                        const std::string& mu_s, const std::string& x_s,
                        nlohmann::ordered_json& config) {
    const std::optional<Rational> alpha = parse_rational_or_sym(alpha_s);
    const std::optional<Rational> lambda = parse_rational_or_sym(lambda_s);
    config["alpha"] = alpha_s;
    config["lambda"] = lambda_s;
    if (mu_s != "sym")
        throw UsageError(
            "mu cannot be specialized directly; it is the seed value of the "
            "sequence (pass --x to fix a rational seed instead)");
    if (!x_s.empty()) {
        const std::optional<Rational> x = parse_rational_or_sym(x_s);
        if (!x) throw UsageError("--x must be rational, not 'sym'");
        if (!alpha || !lambda)
            throw UsageError(
                "--x requires rational --alpha and --lambda (the seed value "
                "only makes sense at a numeric parameter point)");
        config["x"] = x_s;
        return SeqContext(*alpha, *lambda, *x);
    }
    config["mu"] = "sym";
    return SeqContext(alpha, lambda);
}

int cmd_det(unsigned n, const std::string& q_s, const std::string& alpha_s,
            const std::string& lambda_s, const std::string& mu_s,
            const std::string& x_s, const IoOpts& io) {
    nlohmann::ordered_json config;
    config["n"] = n;
    config["q"] = q_s;
    const std::optional<Rational> q = parse_rational_or_sym(q_s);
    if (q) {
        const std::optional<Rational> alpha = parse_rational_or_sym(alpha_s);
        const std::optional<Rational> lambda = parse_rational_or_sym(lambda_s);
        const std::optional<Rational> x =
            x_s.empty() ? std::nullopt : parse_rational_or_sym(x_s);
        if (!alpha || !lambda || !x)
            throw UsageError(
                "rational --q requires rational --alpha, --lambda and --x");
        config["alpha"] = alpha_s;
        config["lambda"] = lambda_s;
        config["x"] = x_s;
        emit(det_rational_doc(hankel_det_rational(*q, *alpha, *lambda, *x, n),
                              config),
             io);
        return 0;
    }
    SeqContext ctx = make_context(alpha_s, lambda_s, mu_s, x_s, config);
    emit(det_doc(hankel_det(ctx, n), config), io);
    return 0;
}

int cmd_factor(unsigned n, const std::string& alpha_s,
               const std::string& lambda_s, const std::string& x_s,
               unsigned probe_limit, const IoOpts& io) {
    nlohmann::ordered_json config;
    config["n"] = n;
    SeqContext ctx = make_context(alpha_s, lambda_s, "sym", x_s, config);
    if (probe_limit) config["probe_limit"] = probe_limit;
    emit(factored_doc(factorize(ctx, n, probe_limit), config), io);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "exact Hankel determinants of q-difference tail sequences: "
        "construction, factorization, verification suites and numeric "
        "experiments"};
    app.require_subcommand(1);

    // ------------------------------------------------------------ constants
    auto* c_constants =
        app.add_subcommand("constants", "growth constants and thresholds");
    long constants_prec = 128;
    IoOpts constants_io;
    c_constants->add_option("--precision", constants_prec, "working bits")
        ->default_str("128");
    add_io(c_constants, constants_io);

    // ------------------------------------------------------------------ det
    auto* c_det = app.add_subcommand(
        "det", "Hankel determinant of the tail sequence, exact");
    unsigned det_n = 1;
    std::string det_q = "sym", det_alpha = "sym", det_lambda = "sym",
                det_mu = "sym", det_x;
    IoOpts det_io;
    c_det->add_option("--n", det_n, "matrix size")->required();
    c_det->add_option("--q", det_q, "q: 'sym' or rational")->default_str("sym");
    c_det->add_option("--alpha", det_alpha, "alpha: 'sym' or rational")
        ->default_str("sym");
    c_det->add_option("--lambda", det_lambda, "lambda: 'sym' or rational")
        ->default_str("sym");
    c_det->add_option("--mu", det_mu, "seed symbol (only 'sym')")
        ->default_str("sym");
    c_det->add_option("--x", det_x, "rational seed value replacing mu");
    add_io(c_det, det_io);

    // --------------------------------------------------------------- factor
    auto* c_factor = app.add_subcommand(
        "factor", "split the determinant into q-power, cyclotomic factors "
                  "and cofactor");
    unsigned factor_n = 4, factor_probe = 0;
    std::string factor_alpha = "sym", factor_lambda = "sym", factor_x;
    IoOpts factor_io;
    c_factor->add_option("--n", factor_n, "matrix size")->required();
    c_factor->add_option("--alpha", factor_alpha, "alpha: 'sym' or rational")
        ->default_str("sym");
    c_factor->add_option("--lambda", factor_lambda, "lambda: 'sym' or rational")
        ->default_str("sym");
    c_factor->add_option("--x", factor_x, "rational seed value replacing mu");
    c_factor->add_option("--probe-limit", factor_probe,
                         "highest cyclotomic index probed (0 = default)");
    add_io(c_factor, factor_io);

    // --------------------------------------------------------------- verify
    auto* c_verify =
        app.add_subcommand("verify", "run an identity-verification suite");
    std::string verify_suite;
    VerifyOptions vopt;
    unsigned verify_l = 0, verify_m = 0;
    IoOpts verify_io;
    c_verify->add_option("suite", verify_suite, "suite name or 'all'")
        ->required();
    c_verify->add_option("--nmax", vopt.nmax, "largest index (0 = default)");
    c_verify->add_option("--l", verify_l, "largest cyclotomic level");
    c_verify->add_option("--m", verify_m, "largest multiplicity");
    c_verify->add_option("--seed", vopt.seed, "PRNG seed for drawn parameters")
        ->default_str("20080812");
    c_verify->add_option("--precision", vopt.precision, "working bits")
        ->default_str("128");
    c_verify->add_option("--probe-limit", vopt.probe_limit,
                         "cyclotomic probe limit (0 = default)");
    c_verify->add_flag("--force", vopt.force, "lift guard rails");
    add_io(c_verify, verify_io);

    // ---------------------------------------------------------------- decay
    auto* c_decay = app.add_subcommand(
        "decay", "certified numeric decay of |V_n| at a rational point");
    std::string decay_q, decay_alpha, decay_lambda = "0";
    unsigned decay_nmax = 12;
    bool decay_force = false;
    IoOpts decay_io;
    c_decay->add_option("--q", decay_q, "rational q, |q| > 1")->required();
    c_decay->add_option("--alpha", decay_alpha, "rational alpha != 0")
        ->required();
    c_decay->add_option("--lambda", decay_lambda, "rational lambda")
        ->default_str("0");
    c_decay->add_option("--nmax", decay_nmax, "largest matrix size")
        ->default_str("12");
    c_decay->add_flag("--force", decay_force, "lift the default size cap");
    add_io(c_decay, decay_io);

    // ----------------------------------------------------------------- asym
    auto* c_asym = app.add_subcommand(
        "asym", "exact weighted cyclotomic-exponent sum and its cubic ratio");
    unsigned asym_n = 1000;
    IoOpts asym_io;
    c_asym->add_option("--n", asym_n, "index (>= 3)")->required();
    add_io(c_asym, asym_io);

    // ---------------------------------------------------------------- sumel
    auto* c_sumel = app.add_subcommand(
        "sumel", "exact totient floor sum against its leading-term "
                 "prediction");
    std::string sumel_a = "3", sumel_c = "0";
    unsigned sumel_n = 100;
    IoOpts sumel_io;
    c_sumel->add_option("--a", sumel_a, "rational a > 0")->default_str("3");
    c_sumel->add_option("--c", sumel_c, "rational c in [0, a)")
        ->default_str("0");
    c_sumel->add_option("--n", sumel_n, "index")->required();
    add_io(c_sumel, sumel_io);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*c_constants) {
            if (constants_prec < 32)
                throw UsageError("--precision must be at least 32 bits");
            emit(constants_doc(
                     constants_report(static_cast<mpfr_prec_t>(constants_prec))),
                 constants_io);
            return 0;
        }
        if (*c_det)
            return cmd_det(det_n, det_q, det_alpha, det_lambda, det_mu, det_x,
                           det_io);
        if (*c_factor)
            return cmd_factor(factor_n, factor_alpha, factor_lambda, factor_x,
                              factor_probe, factor_io);
        if (*c_verify) {
            vopt.lmax = verify_l;
            vopt.mmax = verify_m;
            nlohmann::ordered_json doc;
            bool pass = false;
            if (verify_suite == "all") {
                std::vector<SuiteReport> reps = run_all_suites(vopt);
                doc = suites_doc(reps);
                pass = doc.at("pass").get<bool>();
            } else {
                SuiteReport rep = run_suite(verify_suite, vopt);
                pass = rep.all_pass();
                doc = suite_doc(rep);
            }
            emit(doc, verify_io);
            if (!pass) {
                const auto& ff = doc.at("first_failure");
                std::cerr << "verification failed: "
                          << ff.at("name").get<std::string>() << "\n";
                return 1;
            }
            return 0;
        }
        if (*c_decay) {
            const Rational q = parse_rational(decay_q);
            const Rational alpha = parse_rational(decay_alpha);
            const Rational lambda = parse_rational(decay_lambda);
            const unsigned cap = decay_force ? decay_nmax : 24;
            emit(decay_doc(decay_experiment(q, alpha, lambda, decay_nmax, cap)),
                 decay_io);
            return 0;
        }
        if (*c_asym) {
            emit(weighted_doc(weighted_exponent_sum(asym_n)), asym_io);
            return 0;
        }
        if (*c_sumel) {
            emit(sumel_doc(sumel_partial(parse_rational(sumel_a),
                                         parse_rational(sumel_c), sumel_n)),
                 sumel_io);
            return 0;
        }
        throw UsageError("no subcommand selected");
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 1;
    }
}
