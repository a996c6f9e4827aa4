#include "qltc/ledger.h"

#include <algorithm>
#include <cmath>
#include <functional>

namespace qltc {

const std::vector<std::string> kLedgerStages = {"original",       "post-copy",   "post-gauge",
                                                "post-thicken",   "cone",        "thickened-cone",
                                                "full-height",    "partial-height", "reduced-cone"};

const char *bound_kind_name(BoundKind k) {
    switch (k) {
        case BoundKind::Exact:
            return "exact";
        case BoundKind::Upper:
            return "upper";
        case BoundKind::Lower:
            return "lower";
    }
    return "?";
}

const char *ledger_status_name(LedgerStatus s) {
    switch (s) {
        case LedgerStatus::Pass:
            return "pass";
        case LedgerStatus::Fail:
            return "fail";
        case LedgerStatus::Unevaluated:
            return "unevaluated";
    }
    return "?";
}

namespace {

using Opt = std::optional<double>;

struct Stage {
    double N, NX, NZ, qx, wx, qz, wz;
    Opt rx, rz;
};

Stage stage_of(const CodeParams &p) {
    Stage s{double(p.n), double(p.n_x), double(p.n_z), double(p.q_x), double(p.w_x), double(p.q_z), double(p.w_z),
            {}, {}};
    if (p.rho_x) {
        s.rx = to_double(*p.rho_x);
    }
    if (p.rho_z) {
        s.rz = to_double(*p.rho_z);
    }
    return s;
}

double lg(double w) { return std::max(1.0, std::log2(std::max(w, 1.0))); }

// Relative tolerance for comparisons of doubles built from integer counts.
constexpr double kTol = 1e-9;

class RowBuilder {
public:
    RowBuilder(LedgerRow &row, const LedgerConstants &c, size_t index) : row_(row), c_(c), index_(index) {}

    void exact(const std::string &q, const std::string &formula, double measured, double value) {
        LedgerCheck ch{q, formula, BoundKind::Exact, "", measured, value, value, LedgerStatus::Pass, ""};
        if (std::abs(measured - value) > kTol * std::max(1.0, std::abs(value))) {
            ch.status = LedgerStatus::Fail;
        }
        row_.checks.push_back(std::move(ch));
    }

    Opt upper(const std::string &q, const std::string &formula, Opt measured, Opt base) {
        return bound(q, formula, BoundKind::Upper, q + "@" + std::to_string(index_) + ".hi", measured, base);
    }

    Opt lower(const std::string &q, const std::string &formula, Opt measured, Opt base) {
        return bound(q, formula, BoundKind::Lower, q + "@" + std::to_string(index_) + ".lo", measured, base);
    }

    void theta(const std::string &q, const std::string &formula, double measured, double base) {
        upper(q, formula, measured, base);
        lower(q, formula, measured, base);
    }

private:
    Opt bound(const std::string &q, const std::string &formula, BoundKind kind, const std::string &name, Opt measured,
              Opt base) {
        LedgerCheck ch{q, formula, kind, name, measured, base, {}, LedgerStatus::Unevaluated, ""};
        auto it = c_.find(name);
        if (!base) {
            ch.note = "input soundness unavailable";
        } else if (it == c_.end()) {
            ch.note = "constant missing";
        } else {
            ch.bound = it->second * *base;
            if (!measured) {
                ch.note = "not measured; bound propagated";
            } else {
                double slack = kTol * std::max(1.0, std::abs(*ch.bound));
                bool ok = kind == BoundKind::Upper ? *measured <= *ch.bound + slack : *measured >= *ch.bound - slack;
                ch.status = ok ? LedgerStatus::Pass : LedgerStatus::Fail;
            }
        }
        Opt out = ch.bound;
        row_.checks.push_back(std::move(ch));
        return out;
    }

    LedgerRow &row_;
    const LedgerConstants &c_;
    size_t index_;
};

Opt either(Opt measured, Opt predicted) { return measured ? measured : predicted; }

template <class F>
Opt lift(Opt a, F f) {
    return a ? Opt(f(*a)) : Opt();
}

}  // namespace

std::vector<LedgerRow> parameter_ledger(const std::vector<CodeParams> &stage_params, size_t l1, size_t l2,
                                        const LedgerConstants &constants) {
    std::vector<LedgerRow> rows;
    std::vector<Stage> s;
    for (size_t i = 0; i < stage_params.size() && i < kLedgerStages.size(); ++i) {
        rows.push_back({kLedgerStages[i], stage_params[i], {}});
        s.push_back(stage_of(stage_params[i]));
    }
    const double L1 = double(l1), L2 = double(l2);
    std::vector<Opt> rx(s.size()), rz(s.size());
    if (!s.empty()) {
        rx[0] = s[0].rx;
        rz[0] = s[0].rz;
    }

    for (size_t i = 1; i < s.size(); ++i) {
        RowBuilder b(rows[i], constants, i);
        const Stage &c = s[i];
        Opt px, pz;
        switch (i) {
            case 1: {
                const Stage &o = s[0];
                b.upper("q_x", "O(1)", c.qx, 1.0);
                b.upper("w_x", "O(w_X)", c.wx, o.wx);
                b.upper("q_z", "O(q_Z)", c.qz, o.qz);
                b.upper("w_z", "O(q_X w_Z)", c.wz, o.qx * o.wz);
                b.exact("N", "N q_X", c.N, o.N * o.qx);
                b.theta("N_x", "Theta(N_X + N q_X)", c.NX, o.NX + o.N * o.qx);
                b.exact("N_z", "N_Z", c.NZ, o.NZ);
                pz = b.lower("rho_z", "Omega((N1/N_X1) rho_Z / (q_X rho_Z + (N/N_X) q_X^3))", c.rz,
                             lift(rz[0], [&](double r) {
                                 return (c.N / c.NX) * r / (o.qx * r + (o.N / o.NX) * o.qx * o.qx * o.qx);
                             }));
                px = b.lower("rho_x", "Omega(q_X rho_X)", c.rx, lift(rx[0], [&](double r) { return o.qx * r; }));
                break;
            }
            case 2: {
                const Stage &p = s[1];
                b.upper("q_x", "O(1)", c.qx, 1.0);
                b.upper("w_x", "O(1)", c.wx, 1.0);
                b.upper("q_z", "O(w_X1 q_Z1)", c.qz, p.wx * p.qz);
                b.upper("w_z", "O(w_Z1 w_X1)", c.wz, p.wz * p.wx);
                b.theta("N", "Theta(N1)", c.N, p.N);
                b.theta("N_x", "Theta(N_X1)", c.NX, p.NX);
                b.exact("N_z", "N_Z1", c.NZ, p.NZ);
                pz = b.lower("rho_z", "Omega((N2/N_X2)(N_X1/N1) rho_Z1 / (w_X1 (1 + (N_X1/N1) rho_Z1)))", c.rz,
                             lift(rz[1], [&](double r) {
                                 return (c.N / c.NX) * (p.NX / p.N) * r / (p.wx * (1 + (p.NX / p.N) * r));
                             }));
                px = b.lower("rho_x", "Omega((N2/N1) rho_X1)", c.rx, lift(rx[1], [&](double r) { return (c.N / p.N) * r; }));
                break;
            }
            case 3: {
                const Stage &p = s[2];
                b.upper("q_x", "O(1)", c.qx, 1.0);
                b.upper("w_x", "O(1)", c.wx, 1.0);
                b.upper("q_z", "O(1)", c.qz, 1.0);
                b.upper("w_z", "O(w_Z2)", c.wz, p.wz);
                b.theta("N", "Theta(l1 (N2 + N_X2))", c.N, L1 * (p.N + p.NX));
                b.exact("N_x", "N_X2 l1", c.NX, p.NX * L1);
                b.theta("N_z", "Theta(N_Z2 + l1 N2)", c.NZ, p.NZ + L1 * p.N);
                pz = b.lower("rho_z", "Omega((N3/N_X3) min((N_X2/N2) rho_Z2, 1) / l1)", c.rz, lift(rz[2], [&](double r) {
                                 return (c.N / c.NX) * std::min((p.NX / p.N) * r, 1.0) / L1;
                             }));
                px = b.lower("rho_x", "Omega((N3/N_Z3) min((N_Z2/N2) rho_X2, 1) / (w_Z2 q_Z2 l1^2))", c.rx,
                             lift(rx[2], [&](double r) {
                                 return (c.N / c.NZ) * std::min((p.NZ / p.N) * r, 1.0) / (p.wz * p.qz * L1 * L1);
                             }));
                break;
            }
            case 4: {
                const Stage &p = s[3];
                b.upper("N", "O(N3 + N_Z3 w_Z3)", c.N, p.N + p.NZ * p.wz);
                b.lower("N", "Omega(N3 + N_Z3)", c.N, p.N + p.NZ);
                b.upper("N_x", "O(N_X3 + N_Z3 w_Z3 log w_Z3)", c.NX, p.NX + p.NZ * p.wz * lg(p.wz));
                b.lower("N_x", "Omega(N_X3 + N_Z3)", c.NX, p.NX + p.NZ);
                b.upper("N_z", "O(N_Z3 w_Z3)", c.NZ, p.NZ * p.wz);
                b.lower("N_z", "Omega(N_Z3)", c.NZ, p.NZ);
                pz = b.lower("rho_z", "Omega((N4a/N_X4a) rho_Z3 / (w_Z3 (rho_Z3 + N3/N_X3)))", c.rz,
                             lift(rz[3], [&](double r) { return (c.N / c.NX) * r / (p.wz * (r + p.N / p.NX)); }));
                px = b.lower("rho_x", "Omega((N4a/N_Z4a)(N_Z3/N3) rho_X3 / (w_Z3 (1 + (N_Z3/N3) rho_X3)))", c.rx,
                             lift(rx[3], [&](double r) {
                                 return (c.N / c.NZ) * (p.NZ / p.N) * r / (p.wz * (1 + (p.NZ / p.N) * r));
                             }));
                break;
            }
            case 5: {
                const Stage &p = s[4];
                b.theta("N", "Theta(l2 (N_Z4a + N4a))", c.N, L2 * (p.NZ + p.N));
                b.theta("N_x", "Theta(l2 (N_X4a + N4a))", c.NX, L2 * (p.NX + p.N));
                b.exact("N_z", "l2 N_Z4a", c.NZ, L2 * p.NZ);
                pz = b.lower("rho_z", "Omega((N4b/N_X4b) min(N_X4a rho_Z4a / N4a, 1) / l2)", c.rz,
                             lift(rz[4], [&](double r) { return (c.N / c.NX) * std::min(p.NX * r / p.N, 1.0) / L2; }));
                px = b.lower("rho_x", "Omega((N4b/N_Z4b) min(N_Z4a rho_X4a / N4a, 1) / l2)", c.rx,
                             lift(rx[4], [&](double r) { return (c.N / c.NZ) * std::min(p.NZ * r / p.N, 1.0) / L2; }));
                break;
            }
            case 6: {
                const Stage &p = s[5];
                const Stage &a = s[4];
                const Stage &t = s[3];
                b.exact("N", "N4b", c.N, p.N);
                b.theta("N_x", "Theta(l2 N4a + N_X4a)", c.NX, L2 * a.N + a.NX);
                b.exact("N_z", "N_Z4b", c.NZ, p.NZ);
                pz = b.lower("rho_z", "Omega((N_X4b/N_X4c) rho_Z4b / (w_Z3 log w_Z3 l2))", c.rz,
                             lift(rz[5], [&](double r) { return (p.NX / c.NX) * r / (t.wz * lg(t.wz) * L2); }));
                px = b.lower("rho_x", "rho_X4b", c.rx, rx[5]);
                break;
            }
            case 7: {
                const Stage &p = s[6];
                const Stage &a = s[4];
                const Stage &t = s[3];
                b.exact("N", "N4c", c.N, p.N);
                b.theta("N_x", "Theta(l2 N4a + l2 N3 + N_X4a)", c.NX, L2 * a.N + L2 * t.N + a.NX);
                b.exact("N_z", "N_Z4c", c.NZ, p.NZ);
                pz = b.lower("rho_z", "Omega((N_X4c/N_X4d) rho_Z4c)", c.rz,
                             lift(rz[6], [&](double r) { return (p.NX / c.NX) * r; }));
                px = b.lower("rho_x", "rho_X4c", c.rx, rx[6]);
                break;
            }
            case 8: {
                const Stage &p = s[7];
                const Stage &t = s[3];
                b.upper("q_x", "O(1)", c.qx, 1.0);
                b.upper("w_x", "O(1)", c.wx, 1.0);
                b.upper("q_z", "O(1)", c.qz, 1.0);
                b.upper("w_z", "O(1)", c.wz, 1.0);
                b.theta("N", "Theta(N4d)", c.N, p.N);
                b.upper("N_x", "O(l2 (N3 + N_Z3 w_Z3))", c.NX, L2 * (t.N + t.NZ * t.wz));
                b.lower("N_x", "Omega(N_X4d)", c.NX, p.NX);
                b.exact("N_z", "N_Z4b", c.NZ, s[5].NZ);
                pz = b.lower("rho_z", "Omega((N4/N_X4)(N_X4d/N4d) rho_Z4d / (w_Z3 (N_X4d rho_Z4d / N4d + 1)))", c.rz,
                             lift(rz[7], [&](double r) {
                                 return (c.N / c.NX) * (p.NX / p.N) * r / (t.wz * (p.NX * r / p.N + 1));
                             }));
                px = b.lower("rho_x", "Omega((N4/N4d) rho_X4d)", c.rx, lift(rx[7], [&](double r) { return (c.N / p.N) * r; }));
                break;
            }
        }
        if (i == 5 && !s.empty()) {
            b.upper("l2", "Theta(w_Z3 log w_Z3)", L2, s[3].wz * lg(s[3].wz));
        }
        if (i == 3) {
            const Stage &p = s[2];
            b.upper("l1", "Theta(q_Z2^(1+e) min(q_Z2 w_Z2, N2)^O(e))", L1, p.qz);
        }
        rx[i] = either(c.rx, px);
        rz[i] = either(c.rz, pz);
    }
    return rows;
}

LedgerConstants fit_ledger_constants(const std::vector<LedgerRow> &rows) {
    LedgerConstants out;
    for (const auto &row : rows) {
        for (const auto &ch : row.checks) {
            if (ch.constant.empty() || !ch.measured || !ch.base || *ch.base <= 0) {
                continue;
            }
            double ratio = *ch.measured / *ch.base;
            auto it = out.find(ch.constant);
            if (it == out.end()) {
                out[ch.constant] = ratio;
            } else if (ch.kind == BoundKind::Upper) {
                it->second = std::max(it->second, ratio);
            } else {
                it->second = std::min(it->second, ratio);
            }
        }
    }
    return out;
}

bool ledger_passes(const std::vector<LedgerRow> &rows) {
    for (const auto &row : rows) {
        for (const auto &ch : row.checks) {
            if (ch.status == LedgerStatus::Fail) {
                return false;
            }
        }
    }
    return true;
}

LedgerConstants default_ledger_constants() {
    return {
        {"N@2.hi", 2.48},
        {"N@2.lo", 0.5769},
        {"N@3.hi", 1.783},
        {"N@3.lo", 0.4448},
        {"N@4.hi", 0.8367},
        {"N@4.lo", 0.9842},
        {"N@5.hi", 1.589},
        {"N@5.lo", 0.3969},
        {"N@8.hi", 2.118},
        {"N@8.lo", 0.5267},
        {"N_x@1.hi", 1.194},
        {"N_x@1.lo", 0.2969},
        {"N_x@2.hi", 2.649},
        {"N_x@2.lo", 0.6053},
        {"N_x@4.hi", 0.07864},
        {"N_x@4.lo", 0.4415},
        {"N_x@5.hi", 1.232},
        {"N_x@5.lo", 0.3071},
        {"N_x@6.hi", 1.131},
        {"N_x@6.lo", 0.2822},
        {"N_x@7.hi", 0.9905},
        {"N_x@7.lo", 0.2458},
        {"N_x@8.hi", 0.6711},
        {"N_x@8.lo", 0.5495},
        {"N_z@3.hi", 1.524},
        {"N_z@3.lo", 0.3808},
        {"N_z@4.hi", 0.684},
        {"N_z@4.lo", 2.052},
        {"l1@3.hi", 2},
        {"l2@5.hi", 0.09298},
        {"q_x@1.hi", 4},
        {"q_x@2.hi", 4},
        {"q_x@3.hi", 4},
        {"q_x@8.hi", 6},
        {"q_z@1.hi", 2},
        {"q_z@2.hi", 1},
        {"q_z@3.hi", 6},
        {"q_z@8.hi", 6},
        {"rho_x@1.lo", 0.5},
        {"rho_x@2.lo", 0.5},
        {"rho_z@1.lo", 1.667},
        {"rho_z@2.lo", 2},
        {"w_x@1.hi", 2},
        {"w_x@2.hi", 6},
        {"w_x@3.hi", 10},
        {"w_x@8.hi", 24},
        {"w_z@1.hi", 2},
        {"w_z@2.hi", 0.875},
        {"w_z@3.hi", 2},
        {"w_z@8.hi", 10}
    };
}

}  // namespace qltc
