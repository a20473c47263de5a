#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "partsum/arith.hpp"
#include "partsum/hyperbola.hpp"

namespace partsum {

/* ---------------------------------------------------------------------------
   Convergence scans: one row per evaluation point, CSV as the interchange
   format. Values are stored as doubles and printed with 17 significant
   digits, so a written file re-parses to bitwise-identical rows.
   --------------------------------------------------------------------------- */

struct ScanRow {
    double x = 0;
    double value = 0;      // psi_{f,k}(x) or pi_{f,k}(x), blocked evaluator
    double main_term = 0;
    double ratio = 0;      // value / main_term
    double abs_error = 0;  // |value - main_term|
    double envelope = 0;   // x * Upsilon(x, z(x))
    std::optional<double> lower, upper;  // pi sandwich columns, blank for psi
    int64_t runtime_ms = 0;
};

// z selection rule: z = (log x)^B or a fixed value.
struct ZRule {
    enum class Kind { logpow, fixed };
    Kind kind = Kind::logpow;
    double param = 10.0;

    double z(double x) const;
    std::string str() const;
    // accepts "logpow:B" and "fixed:v"
    static ZRule parse(const std::string& text);
};

struct ScanRequest {
    FnSpec spec;
    SumKind kind = SumKind::psi;
    std::vector<uint64_t> xs;
    ZRule z_rule;
    double a_param = 1.0;
};

std::vector<ScanRow> run_scan(const ScanRequest& req);

// points geometrically spaced in [from, to], endpoints included, deduplicated.
std::vector<uint64_t> geometric_grid(double from, double to, unsigned points);

extern const char* const scan_csv_header;
void write_csv(std::ostream& out, const std::vector<ScanRow>& rows);
std::vector<ScanRow> read_csv(std::istream& in);

}  // namespace partsum
