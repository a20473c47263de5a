#include "partsum/scan.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "partsum/asymptotics.hpp"
#include "partsum/floorsum.hpp"

namespace partsum {

double ZRule::z(double x) const {
    return kind == Kind::logpow ? std::pow(std::log(x), param) : param;
}

std::string ZRule::str() const {
    std::ostringstream os;
    os << (kind == Kind::logpow ? "logpow:" : "fixed:") << param;
    return os.str();
}

ZRule ZRule::parse(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("z rule must be logpow:B or fixed:v, got '" + text + "'");
    std::string head = text.substr(0, colon);
    double v = std::stod(text.substr(colon + 1));
    if (head == "logpow") return {Kind::logpow, v};
    if (head == "fixed") {
        if (v < 1.0) throw std::invalid_argument("fixed z must be >= 1");
        return {Kind::fixed, v};
    }
    throw std::invalid_argument("unknown z rule '" + head + "'");
}

std::vector<uint64_t> geometric_grid(double from, double to, unsigned points) {
    if (points == 0) return {};
    if (from < 1 || to < from) throw std::invalid_argument("geometric_grid: need 1 <= from <= to");
    std::vector<uint64_t> xs;
    if (points == 1) {
        xs.push_back((uint64_t)std::llround(to));
        return xs;
    }
    for (unsigned i = 0; i < points; ++i) {
        double t = (double)i / (double)(points - 1);
        uint64_t x = (uint64_t)std::llround(from * std::pow(to / from, t));
        if (xs.empty() || x != xs.back()) xs.push_back(x);
    }
    return xs;
}

std::vector<ScanRow> run_scan(const ScanRequest& req) {
    std::vector<ScanRow> rows;
    rows.reserve(req.xs.size());
    for (uint64_t x : req.xs) {
        auto t0 = std::chrono::steady_clock::now();
        ScanRow row;
        row.x = (double)x;
        const double z = req.z_rule.z((double)x);

        SumResult res = (req.kind == SumKind::psi) ? psi_fk_blocked(req.spec, x)
                                                   : pi_fk_blocked(req.spec, x);
        row.value = (double)res.value;
        if (req.kind == SumKind::psi) {
            row.main_term = (double)main_term_psi(req.spec, (long double)x);
            row.envelope =
                (double)((long double)x * envelope_psi(req.spec, (long double)x, z, req.a_param));
        } else {
            row.main_term = (double)(cfk_reference(req.spec) / 3.0L * (long double)x *
                                     std::log(std::log((long double)x)));
            row.envelope =
                (double)((long double)x * envelope_pi(req.spec, (long double)x, z, req.a_param));
            if (req.spec.L_bound) {
                auto [lo, hi] = sandwich_pi(req.spec, (long double)x);
                row.lower = (double)lo;
                row.upper = (double)hi;
            }
        }
        row.ratio = row.value / row.main_term;
        row.abs_error = std::fabs(row.value - row.main_term);
        auto t1 = std::chrono::steady_clock::now();
        row.runtime_ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
        rows.push_back(row);
    }
    return rows;
}

const char* const scan_csv_header = "x,value,main_term,ratio,abs_error,envelope,lower,upper,runtime_ms";

namespace {
std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}
}  // namespace

void write_csv(std::ostream& out, const std::vector<ScanRow>& rows) {
    out << scan_csv_header << "\n";
    for (const ScanRow& r : rows) {
        out << fmt17(r.x) << ',' << fmt17(r.value) << ',' << fmt17(r.main_term) << ','
            << fmt17(r.ratio) << ',' << fmt17(r.abs_error) << ',' << fmt17(r.envelope) << ',';
        if (r.lower) out << fmt17(*r.lower);
        out << ',';
        if (r.upper) out << fmt17(*r.upper);
        out << ',' << r.runtime_ms << "\n";
    }
}

std::vector<ScanRow> read_csv(std::istream& in) {
    std::vector<ScanRow> rows;
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("scan CSV: missing header");
    if (line != scan_csv_header)
        throw std::invalid_argument("scan CSV: unexpected header '" + line + "'");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        // a trailing empty cell is not produced by the schema; runtime_ms is last
        if (cells.size() != 9)
            throw std::invalid_argument("scan CSV: expected 9 columns, got " +
                                        std::to_string(cells.size()));
        ScanRow r;
        r.x = std::stod(cells[0]);
        r.value = std::stod(cells[1]);
        r.main_term = std::stod(cells[2]);
        r.ratio = std::stod(cells[3]);
        r.abs_error = std::stod(cells[4]);
        r.envelope = std::stod(cells[5]);
        if (!cells[6].empty()) r.lower = std::stod(cells[6]);
        if (!cells[7].empty()) r.upper = std::stod(cells[7]);
        r.runtime_ms = std::stoll(cells[8]);
        rows.push_back(r);
    }
    return rows;
}

}  // namespace partsum
