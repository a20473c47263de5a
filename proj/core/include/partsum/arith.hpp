#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "partsum/int128.hpp"
#include "partsum/sieve.hpp"

namespace partsum {

/* ---------------------------------------------------------------------------
   Growth descriptors. Symbolic rather than arbitrary code so that error
   envelopes are reproducible from config files. Evaluation clamps to >= 1
   (loglog powers dip below 1 near x = 3) which keeps every descriptor
   non-decreasing and >= 1 on [3, inf).
   --------------------------------------------------------------------------- */
struct GrowthTerm {
    enum class Kind { constant, power, log_power, loglog_power, x_over_log };

    Kind kind = Kind::constant;
    double a = 1.0;  // exponent, or the constant itself

    // x below 3 is clamped to 3.
    long double eval(long double x) const;
    std::string str() const;

    static GrowthTerm constant(double c) { return {Kind::constant, c}; }
    static GrowthTerm power(double a) { return {Kind::power, a}; }
    static GrowthTerm log_power(double a) { return {Kind::log_power, a}; }
    static GrowthTerm loglog_power(double a) { return {Kind::loglog_power, a}; }
    static GrowthTerm x_over_log() { return {Kind::x_over_log, 1.0}; }
};

struct GrowthProfile {
    GrowthTerm r1, r2, r3;
};

/* ---------------------------------------------------------------------------
   Exact integer values of an arithmetic function on [1, N].
   --------------------------------------------------------------------------- */
class ArithFnTable {
public:
    ArithFnTable(uint64_t limit, Int128 fill = 0);
    explicit ArithFnTable(std::vector<Int128> values);  // values[0] is f(1)

    uint64_t limit() const { return (uint64_t)values_.size(); }
    Int128 operator()(uint64_t n) const { return values_[n - 1]; }
    Int128& at(uint64_t n) { return values_[n - 1]; }
    const std::vector<Int128>& values() const { return values_; }

private:
    std::vector<Int128> values_;
};

/* ---------------------------------------------------------------------------
   Descriptor of the pair (g, k) defining f = g * id^{k+1}.
   --------------------------------------------------------------------------- */
enum class Preset { upsilon, vartheta, rho, custom };
enum class GKind { sigma, phi, mu, custom_table };

struct FnSpec {
    Preset name = Preset::custom;
    GKind g_kind = GKind::custom_table;
    unsigned k = 0;
    GrowthProfile growth;
    // L with 0 <= f(n) <= L n^{k+1}; required by the pi sandwich operations.
    std::optional<double> L_bound;
    // |g(n)| <= majorant.first * n^{majorant.second}, for custom tail bounds.
    std::optional<std::pair<double, double>> g_majorant;
    std::shared_ptr<const std::vector<Int128>> custom_g;  // g(1..len), custom only

    // upsilon = id^2 * sigma (k=1), vartheta = id^3 * phi (k=2),
    // rho = id^2 * phi (k=1).
    static FnSpec upsilon();
    static FnSpec vartheta();
    static FnSpec rho();
    static FnSpec custom(std::vector<Int128> g, unsigned k);

    std::string label() const;
};

/* ---------------------------------------------------------------------------
   Operations. All tables are exact; any overflowing entry aborts construction
   with capacity_error instead of wrapping.
   --------------------------------------------------------------------------- */

// g(n) for n <= limit from the sieve's phi/sigma/mu arrays or the custom table.
ArithFnTable tabulate_g(const FnSpec& spec, uint64_t limit, const SieveTable& sieve);
ArithFnTable tabulate_g(const FnSpec& spec, uint64_t limit);

// values[n] = n^e.
ArithFnTable power_table(uint64_t limit, unsigned e);

// (a*b)[n] = sum_{de=n} a[d] b[e]; O(N log N) over the divisor double loop.
ArithFnTable dirichlet_convolve(const ArithFnTable& a, const ArithFnTable& b);

// Recovers g from f = g * id^{k+1} via the Dirichlet inverse mu(n) n^{k+1}.
ArithFnTable invert_to_g(const ArithFnTable& f, unsigned k, const SieveTable& sieve);
ArithFnTable invert_to_g(const ArithFnTable& f, unsigned k);

ArithFnTable build_f_from_spec(const FnSpec& spec, uint64_t limit);

// Custom-table file format: line i holds g(i) as an exact decimal integer.
std::vector<Int128> load_custom_table(const std::string& path);

}  // namespace partsum
