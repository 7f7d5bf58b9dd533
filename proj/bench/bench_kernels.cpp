// Compares the serial and the OpenMP fraction-free elimination kernels on
// matrices of increasing symbolic weight, checking that both produce the
// identical polynomial.
#include <chrono>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "qhankel/hankel.hpp"
#include "qhankel/multipoly.hpp"
#include "qhankel/qseq.hpp"
#include "qhankel/rational.hpp"

using namespace qhankel;

namespace {

double run_ms(const PolyMatrix& m, bool parallel, MultiPoly& out) {
    const auto t0 = std::chrono::steady_clock::now();
    out = det_bareiss(m, parallel);
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0)
        .count();
}

struct Case {
    std::string label;
    std::optional<Rational> alpha;
    std::optional<Rational> lambda;
    unsigned n;
};

}  // namespace

int main() {
    const std::vector<Case> cases = {
        {"fully symbolic", std::nullopt, std::nullopt, 4},
        {"fully symbolic", std::nullopt, std::nullopt, 5},
        {"alpha=2 lambda=1/3", Rational(2), Rational(1, 3), 6},
        {"alpha=2 lambda=1/3", Rational(2), Rational(1, 3), 7},
    };

    std::printf("%-22s %3s %12s %12s %9s %6s\n", "case", "n", "serial ms",
                "parallel ms", "speedup", "equal");
    bool all_equal = true;
    for (const Case& c : cases) {
        SeqContext ctx(c.alpha, c.lambda);
        const PolyMatrix m = hankel_matrix(ctx, c.n);
        MultiPoly serial, parallel;
        const double ts = run_ms(m, false, serial);
        const double tp = run_ms(m, true, parallel);
        const bool equal = serial.serialize() == parallel.serialize();
        all_equal = all_equal && equal;
        std::printf("%-22s %3u %12.2f %12.2f %8.2fx %6s\n", c.label.c_str(),
                    c.n, ts, tp, tp > 0 ? ts / tp : 0.0,
                    equal ? "yes" : "NO");
    }
    if (!all_equal) {
        std::printf("kernel outputs disagree\n");
        return 1;
    }
    return 0;
}
