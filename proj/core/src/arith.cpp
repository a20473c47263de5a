#include "partsum/arith.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "partsum/errors.hpp"

namespace partsum {

long double GrowthTerm::eval(long double x) const {
    if (x < 3.0L) x = 3.0L;
    long double v = 1.0L;
    switch (kind) {
        case Kind::constant: v = (long double)a; break;
        case Kind::power: v = std::pow(x, (long double)a); break;
        case Kind::log_power: v = std::pow(std::log(x), (long double)a); break;
        case Kind::loglog_power: v = std::pow(std::log(std::log(x)), (long double)a); break;
        case Kind::x_over_log: v = x / std::log(x); break;
    }
    return v < 1.0L ? 1.0L : v;
}

std::string GrowthTerm::str() const {
    switch (kind) {
        case Kind::constant: return "const:" + std::to_string(a);
        case Kind::power: return "pow:" + std::to_string(a);
        case Kind::log_power: return "logpow:" + std::to_string(a);
        case Kind::loglog_power: return "loglogpow:" + std::to_string(a);
        case Kind::x_over_log: return "x/logx";
    }
    return "?";
}

ArithFnTable::ArithFnTable(uint64_t limit, Int128 fill) : values_(limit, fill) {
    if (limit < 1) throw std::invalid_argument("table limit must be >= 1");
}

ArithFnTable::ArithFnTable(std::vector<Int128> values) : values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("table must hold at least f(1)");
}

namespace {
GrowthProfile sigma_profile() {
    // r1 = (loglog x)^2, r2 = 1, r3 = x/log x
    return {GrowthTerm::loglog_power(2), GrowthTerm::constant(1), GrowthTerm::x_over_log()};
}
GrowthProfile phi_profile() {
    // r1 = loglog x, r2 = 1, r3 = x/log x
    return {GrowthTerm::loglog_power(1), GrowthTerm::constant(1), GrowthTerm::x_over_log()};
}
}  // namespace

FnSpec FnSpec::upsilon() {
    FnSpec s;
    s.name = Preset::upsilon;
    s.g_kind = GKind::sigma;
    s.k = 1;
    s.growth = sigma_profile();
    return s;
}

FnSpec FnSpec::vartheta() {
    FnSpec s;
    s.name = Preset::vartheta;
    s.g_kind = GKind::phi;
    s.k = 2;
    s.growth = phi_profile();
    return s;
}

FnSpec FnSpec::rho() {
    FnSpec s;
    s.name = Preset::rho;
    s.g_kind = GKind::phi;
    s.k = 1;
    s.growth = phi_profile();
    s.L_bound = 1.0;
    return s;
}

FnSpec FnSpec::custom(std::vector<Int128> g, unsigned k) {
    FnSpec s;
    s.name = Preset::custom;
    s.g_kind = GKind::custom_table;
    s.k = k;
    s.growth = sigma_profile();  // conservative default, overridable
    s.custom_g = std::make_shared<const std::vector<Int128>>(std::move(g));
    return s;
}

std::string FnSpec::label() const {
    switch (name) {
        case Preset::upsilon: return "upsilon";
        case Preset::vartheta: return "vartheta";
        case Preset::rho: return "rho";
        case Preset::custom: return "custom";
    }
    return "?";
}

ArithFnTable tabulate_g(const FnSpec& spec, uint64_t limit, const SieveTable& sieve) {
    if (spec.g_kind != GKind::custom_table && sieve.limit() < limit)
        throw std::invalid_argument("tabulate_g: sieve shorter than requested limit");
    ArithFnTable t(limit);
    switch (spec.g_kind) {
        case GKind::sigma:
            t.at(1) = 1;
            for (uint64_t n = 2; n <= limit; ++n) t.at(n) = (Int128)sieve.sigma(n);
            break;
        case GKind::phi:
            t.at(1) = 1;
            for (uint64_t n = 2; n <= limit; ++n) t.at(n) = (Int128)sieve.phi(n);
            break;
        case GKind::mu:
            t.at(1) = 1;
            for (uint64_t n = 2; n <= limit; ++n) t.at(n) = (Int128)sieve.mu(n);
            break;
        case GKind::custom_table: {
            if (!spec.custom_g)
                throw std::invalid_argument("tabulate_g: custom spec has no table");
            if (spec.custom_g->size() < limit)
                throw std::invalid_argument("tabulate_g: custom table holds " +
                                            std::to_string(spec.custom_g->size()) +
                                            " values, need " + std::to_string(limit));
            for (uint64_t n = 1; n <= limit; ++n) t.at(n) = (*spec.custom_g)[n - 1];
            break;
        }
    }
    return t;
}

ArithFnTable tabulate_g(const FnSpec& spec, uint64_t limit) {
    if (spec.g_kind == GKind::custom_table) {
        SieveTable dummy(2);
        return tabulate_g(spec, limit, dummy);
    }
    SieveTable sieve(std::max<uint64_t>(limit, 2));
    return tabulate_g(spec, limit, sieve);
}

ArithFnTable power_table(uint64_t limit, unsigned e) {
    ArithFnTable t(limit);
    for (uint64_t n = 1; n <= limit; ++n) {
        Int128 v = 1;
        for (unsigned j = 0; j < e; ++j) {
            if (mul_overflows(v, (Int128)n, v))
                throw capacity_error("power_table: " + std::to_string(n) + "^" +
                                     std::to_string(e) + " exceeds 128 bits");
        }
        t.at(n) = v;
    }
    return t;
}

ArithFnTable dirichlet_convolve(const ArithFnTable& a, const ArithFnTable& b) {
    if (a.limit() != b.limit())
        throw std::invalid_argument("dirichlet_convolve: tables must share one limit");
    const uint64_t n = a.limit();
    ArithFnTable out(n, 0);
    for (uint64_t d = 1; d <= n; ++d) {
        Int128 ad = a(d);
        if (ad == 0) continue;
        for (uint64_t m = 1, dm = d; m <= n / d; ++m, dm += d) {
            Int128 prod;
            if (mul_overflows(ad, b(m), prod) || add_overflows(out.at(dm), prod, out.at(dm)))
                throw capacity_error("dirichlet_convolve: value at n = " + std::to_string(dm) +
                                     " exceeds 128 bits");
        }
    }
    return out;
}

ArithFnTable invert_to_g(const ArithFnTable& f, unsigned k, const SieveTable& sieve) {
    if (sieve.limit() < f.limit())
        throw std::invalid_argument("invert_to_g: sieve shorter than table");
    const uint64_t n = f.limit();
    // Dirichlet inverse of the completely multiplicative id^{k+1} is mu(n) n^{k+1}.
    ArithFnTable inv = power_table(n, k + 1);
    inv.at(1) = 1;
    for (uint64_t m = 2; m <= n; ++m) inv.at(m) *= (Int128)sieve.mu(m);
    return dirichlet_convolve(f, inv);
}

ArithFnTable invert_to_g(const ArithFnTable& f, unsigned k) {
    SieveTable sieve(std::max<uint64_t>(f.limit(), 2));
    return invert_to_g(f, k, sieve);
}

ArithFnTable build_f_from_spec(const FnSpec& spec, uint64_t limit) {
    ArithFnTable g = tabulate_g(spec, limit);
    ArithFnTable idk = power_table(limit, spec.k + 1);
    return dirichlet_convolve(g, idk);
}

std::vector<Int128> load_custom_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open custom table file: " + path);
    std::vector<Int128> values;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;  // tolerate blank trailing lines
        size_t e = line.find_last_not_of(" \t\r");
        try {
            values.push_back(parse_int128(line.substr(b, e - b + 1)));
        } catch (const std::invalid_argument& err) {
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": " + err.what());
        }
    }
    if (values.empty()) throw std::invalid_argument("custom table file is empty: " + path);
    return values;
}

}  // namespace partsum
