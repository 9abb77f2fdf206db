#include "anr/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "anr/adjoint.hpp"
#include "anr/blocks.hpp"
#include "anr/rng.hpp"

namespace anr {

double CheckResult::relative_slack() const {
    return slack / (1.0 + std::abs(rhs));
}

bool check_passes(CheckKind kind, double lhs, double rhs, double tol, bool absolute) {
    if (!std::isfinite(lhs) || !std::isfinite(rhs)) return false;
    const double slack = kind == CheckKind::equality ? -std::abs(rhs - lhs) : rhs - lhs;
    const double scale = absolute ? 1.0 : 1.0 + std::abs(rhs);
    return slack >= -tol * scale;
}

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Lazily evaluated matrices and gauges shared by all checks of one instance.
class Context {
public:
    Context(const Frame& f, const OperandMap& ops, const CheckParams& params, const SweepConfig& cfg)
        : f_(f), params_(params), cfg_(cfg) {
        cfg_.validate();
        const auto t = ops.find("T");
        if (t == ops.end()) throw Error(ErrorCode::InvalidInput, "operand T is required");
        for (const auto& [name, m] : ops) {
            if (name != "T" && name != "X" && name != "Y" && name != "P" && name != "Q")
                throw Error(ErrorCode::InvalidInput, "unknown operand role '" + name + "'");
            detail::require_operator_dim(f, m);
            require_finite(m, "operand");
        }
        auto pick = [&](const char* name, const CMat& fallback) {
            const auto it = ops.find(name);
            mats_[name] = it != ops.end() ? it->second : fallback;
        };
        mats_["T"] = t->second;
        pick("X", t->second);
        pick("Y", t->second);
        pick("P", CMat::Identity(f.dim(), f.dim()));
        pick("Q", CMat::Identity(f.dim(), f.dim()));
    }

    const Frame& frame() const { return f_; }
    const CheckParams& params() const { return params_; }
    const SweepConfig& sweep() const { return cfg_; }

    const CMat& get(const std::string& key) const {
        const auto it = mats_.find(key);
        if (it == mats_.end()) throw Error(ErrorCode::InvalidInput, "internal: expression '" + key + "' undefined");
        return it->second;
    }

    template <typename F>
    const CMat& def(const std::string& key, F&& make) {
        if (const auto it = mats_.find(key); it != mats_.end()) return it->second;
        CMat value = make();
        return mats_.emplace(key, std::move(value)).first->second;
    }

    template <typename F>
    double scalar(const std::string& key, F&& make) {
        if (const auto it = scalars_.find(key); it != scalars_.end()) return it->second;
        const double value = make();
        scalars_.emplace(key, value);
        return value;
    }

    const CMat& sh(const std::string& key) {
        return def(key + "#", [&] { return sharp(f_, get(key)); });
    }
    const CMat& prod(const std::string& a, const std::string& b) {
        return def(a + "*" + b, [&] { return CMat(get(a) * get(b)); });
    }

    double w(const std::string& key) {
        return scalar("w(" + key + ")", [&] { return a_numerical_radius(f_, get(key), cfg_); });
    }
    double c(const std::string& key) {
        return scalar("c(" + key + ")", [&] { return a_crawford(f_, get(key), cfg_); });
    }
    double big_c(const std::string& key) {
        return scalar("C(" + key + ")", [&] { return a_crawford_C(f_, get(key), cfg_); });
    }
    double norm(const std::string& key) {
        return scalar("norm(" + key + ")", [&] { return a_seminorm(f_, get(key)); });
    }
    double minmod(const std::string& key) {
        return scalar("m(" + key + ")", [&] { return a_min_modulus(f_, get(key)); });
    }
    /// w_B of [[0, x], [y, 0]].
    double wb(const std::string& x, const std::string& y) {
        return scalar("wB(" + x + "," + y + ")", [&] { return antidiag_radius(f_, get(x), get(y), cfg_); });
    }

    // Shared derived operators.
    const CMat& t2() { return prod("T", "T"); }
    const CMat& t3() {
        t2();
        return def("T^3", [&] { return CMat(get("T*T") * get("T")); });
    }
    /// T T^# + T^# T.
    const CMat& kit() {
        sh("T");
        return def("K", [&] { return CMat(get("T") * get("T#") + get("T#") * get("T")); });
    }
    /// X X^# + Y^# Y.
    const CMat& m_xy() {
        sh("X");
        sh("Y");
        return def("M", [&] { return CMat(get("X") * get("X#") + get("Y#") * get("Y")); });
    }
    /// X^# X + Y Y^#.
    const CMat& n_xy() {
        sh("X");
        sh("Y");
        return def("N", [&] { return CMat(get("X#") * get("X") + get("Y") * get("Y#")); });
    }

    bool square_zero() {
        const CMat& t = get("T");
        return t2().norm() <= 1e-10 * (1.0 + t.squaredNorm());
    }
    bool cube_zero() {
        const CMat& t = get("T");
        return t3().norm() <= 1e-10 * (1.0 + std::pow(t.norm(), 3));
    }

private:
    const Frame& f_;
    CheckParams params_;
    SweepConfig cfg_;
    std::map<std::string, CMat> mats_;
    std::map<std::string, double> scalars_;
};

using CheckFn = std::function<void(Context&, CheckResult&)>;

struct Entry {
    CheckDef def;
    CheckFn fn;
    std::optional<double> exponent;
};

std::string family_of(const std::string& id) {
    return id.substr(0, id.find(':'));
}

Entry make(std::string id, std::vector<std::string> operands, unsigned hyp, std::string lhs, std::string rhs,
           CheckFn fn, CheckKind kind = CheckKind::inequality, double tol_floor = 0, bool absolute = false) {
    Entry e;
    e.def.family = family_of(id);
    e.def.check_id = std::move(id);
    e.def.operands = std::move(operands);
    e.def.hypothesis = hyp;
    e.def.lhs_formula = std::move(lhs);
    e.def.rhs_formula = std::move(rhs);
    e.def.kind = kind;
    e.def.tol_floor = tol_floor;
    e.def.absolute_tol = absolute;
    e.fn = std::move(fn);
    return e;
}

std::string format_exponent(double r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

Entry power_entry(const std::string& id, double r) {
    Entry e = make(
        id, {"T"}, kIntegerOrPositive, "w_A(T)^(2r)", "w_A(T^2)^r / 2 + ||(T#T)^r + (TT#)^r||_A / 4",
        [r](Context& ctx, CheckResult& res) {
            const Frame& f = ctx.frame();
            const CMat& ts = ctx.sh("T");
            const CMat& t = ctx.get("T");
            const auto left = a_positive_power(f, CMat(ts * t), r);
            const auto right = a_positive_power(f, CMat(t * ts), r);
            const double power_norm = spectral_norm((left + right).mat);
            ctx.t2();
            const double w = ctx.w("T"), w2 = ctx.w("T*T");
            res.lhs = std::pow(w, 2 * r);
            res.rhs = 0.5 * std::pow(w2, r) + 0.25 * power_norm;
            res.metadata = {{"r", r}, {"w_A(T)", w}, {"w_A(T^2)", w2}, {"power_sum_norm", power_norm}};
        });
    e.exponent = r;
    return e;
}

std::vector<Entry> build_registry() {
    std::vector<Entry> out;
    const std::vector<std::string> t_only{"T"};
    const std::vector<std::string> xy{"X", "Y"};

    // Equivalence of w_A and ||.||_A.
    out.push_back(make("equiv_half:lower", t_only, kNoHypothesis, "||T||_A / 2", "w_A(T)",
                       [](Context& ctx, CheckResult& res) {
                           res.lhs = 0.5 * ctx.norm("T");
                           res.rhs = ctx.w("T");
                           res.metadata = {{"||T||_A", ctx.norm("T")}, {"w_A(T)", ctx.w("T")}};
                       }));
    out.push_back(make("equiv_half:upper", t_only, kNoHypothesis, "w_A(T)", "||T||_A",
                       [](Context& ctx, CheckResult& res) {
                           res.lhs = ctx.w("T");
                           res.rhs = ctx.norm("T");
                           res.metadata = {{"||T||_A", ctx.norm("T")}, {"w_A(T)", ctx.w("T")}};
                       }));

    // A-selfadjoint operators: w_A = ||.||_A, exercised on H = Re_A(T).
    out.push_back(make(
        "lem_selfadj_eq", t_only, kNoHypothesis, "w_A(Re_A T)", "||Re_A T||_A",
        [](Context& ctx, CheckResult& res) {
            const CMat& h = ctx.def("ReT", [&] { return re_a(ctx.frame(), ctx.get("T")); });
            res.lhs = ctx.w("ReT");
            res.rhs = ctx.norm("ReT");
            res.metadata = {{"a_selfadjoint", is_a_selfadjoint(ctx.frame(), h) ? 1.0 : 0.0}};
        },
        CheckKind::equality));

    // w_A(T) = sup_theta ||Re_A(e^{i theta} T)||_A, evaluated through re_a/im_a and
    // the seminorm rather than the numerical-radius sweep.
    auto rotated_norm = [](Context& ctx, double theta, bool imaginary) {
        const CMat rot = std::complex<double>(std::cos(theta), std::sin(theta)) * ctx.get("T");
        return a_seminorm(ctx.frame(), imaginary ? im_a(ctx.frame(), rot) : re_a(ctx.frame(), rot));
    };
    auto grid_sup = [rotated_norm](bool imaginary) {
        return [rotated_norm, imaginary](Context& ctx, CheckResult& res) {
            const int n = ctx.params().sup_grid_points;
            double best = 0;
            for (int k = 0; k < n; ++k)
                best = std::max(best, rotated_norm(ctx, 2 * std::numbers::pi * k / n, imaginary));
            res.lhs = best;
            res.rhs = ctx.w("T");
            res.metadata = {{"grid_points", double(n)}};
        };
    };
    out.push_back(make("lem_sup_theta:grid", t_only, kNoHypothesis, "max_k ||Re_A(e^{i theta_k} T)||_A", "w_A(T)",
                       grid_sup(false)));
    out.push_back(make("lem_sup_theta:im_grid", t_only, kNoHypothesis, "max_k ||Im_A(e^{i theta_k} T)||_A",
                       "w_A(T)", grid_sup(true)));
    out.push_back(make(
        "lem_sup_theta:refined", t_only, kNoHypothesis, "sup_theta ||Re_A(e^{i theta} T)||_A (refined)", "w_A(T)",
        [rotated_norm](Context& ctx, CheckResult& res) {
            SweepConfig cfg = ctx.sweep();
            cfg.grid_points = std::max(16, ctx.params().sup_grid_points);
            cfg.refine_tol = 1e-10;
            res.lhs = detail::periodic_max([&](double t) { return rotated_norm(ctx, t, false); }, ctx.norm("T"), cfg);
            res.rhs = ctx.w("T");
        },
        CheckKind::equality, 1e-6));

    // Monotonicity of the seminorm on A-positive operators: X' = X#X + Y#Y, Y' = Y#Y.
    out.push_back(make("lem_positivity_mono", xy, kNoHypothesis, "||Y#Y||_A", "||X#X + Y#Y||_A",
                       [](Context& ctx, CheckResult& res) {
                           const Frame& f = ctx.frame();
                           ctx.sh("X");
                           ctx.sh("Y");
                           const CMat& small = ctx.prod("Y#", "Y");
                           const CMat& diff = ctx.prod("X#", "X");
                           const CMat& big = ctx.def("X#X+Y#Y", [&] { return CMat(diff + small); });
                           if (!is_a_positive(f, big) || !is_a_positive(f, small) || !is_a_positive(f, diff)) {
                               res.hypothesis_met = false;
                               res.notes["skip_reason"] = "constructed operators not numerically A-positive";
                               return;
                           }
                           res.lhs = ctx.norm("Y#*Y");
                           res.rhs = ctx.norm("X#X+Y#Y");
                       }));

    // Antidiagonal block bounds, squared.
    auto antidiag_square = [](Context& ctx) {
        const double wb = ctx.wb("X", "Y");
        ctx.m_xy();
        ctx.n_xy();
        return std::tuple{wb * wb, std::max(ctx.norm("M"), ctx.norm("N"))};
    };
    out.push_back(make("thm_antidiag_bounds:lower", xy, kNoHypothesis,
                       "max{||XX#+Y#Y||_A, ||X#X+YY#||_A} / 4", "w_B(antidiag(X,Y))^2",
                       [antidiag_square](Context& ctx, CheckResult& res) {
                           const auto [wb2, mx] = antidiag_square(ctx);
                           res.lhs = 0.25 * mx;
                           res.rhs = wb2;
                           res.metadata = {{"w_B^2", wb2}, {"max_norm", mx}};
                       }));
    out.push_back(make("thm_antidiag_bounds:upper", xy, kNoHypothesis, "w_B(antidiag(X,Y))^2",
                       "max{||XX#+Y#Y||_A, ||X#X+YY#||_A} / 2", [antidiag_square](Context& ctx, CheckResult& res) {
                           const auto [wb2, mx] = antidiag_square(ctx);
                           res.lhs = wb2;
                           res.rhs = 0.5 * mx;
                           res.metadata = {{"w_B^2", wb2}, {"max_norm", mx}};
                       }));

    // Two-sided bound through TT# + T#T.
    out.push_back(make("cor_kittaneh_A:lower", t_only, kStrictlyPositive, "||TT#+T#T||_A / 4", "w_A(T)^2",
                       [](Context& ctx, CheckResult& res) {
                           ctx.kit();
                           res.lhs = 0.25 * ctx.norm("K");
                           res.rhs = std::pow(ctx.w("T"), 2);
                           res.metadata = {{"||TT#+T#T||_A", ctx.norm("K")}, {"w_A(T)", ctx.w("T")}};
                       }));
    out.push_back(make("cor_kittaneh_A:upper", t_only, kStrictlyPositive, "w_A(T)^2", "||TT#+T#T||_A / 2",
                       [](Context& ctx, CheckResult& res) {
                           ctx.kit();
                           res.lhs = std::pow(ctx.w("T"), 2);
                           res.rhs = 0.5 * ctx.norm("K");
                           res.metadata = {{"||TT#+T#T||_A", ctx.norm("K")}, {"w_A(T)", ctx.w("T")}};
                       }));

    // Fourth-power antidiagonal bounds.
    out.push_back(make(
        "thm_fourth_antidiag:lower", xy, kNoHypothesis,
        "max{||(XX#+Y#Y)^2 + 4 Re_A(XY)^2||_A, ||(X#X+YY#)^2 + 4 Re_A(YX)^2||_A} / 16", "w_B(antidiag(X,Y))^4",
        [](Context& ctx, CheckResult& res) {
            const Frame& f = ctx.frame();
            const CMat& m = ctx.m_xy();
            const CMat& n = ctx.n_xy();
            const CMat& xy_ = ctx.prod("X", "Y");
            const CMat& yx = ctx.prod("Y", "X");
            ctx.def("P4", [&] {
                const CMat re = re_a(f, xy_);
                return CMat(m * m + 4.0 * re * re);
            });
            ctx.def("Q4", [&] {
                const CMat re = re_a(f, yx);
                return CMat(n * n + 4.0 * re * re);
            });
            const double wb = ctx.wb("X", "Y");
            res.lhs = std::max(ctx.norm("P4"), ctx.norm("Q4")) / 16.0;
            res.rhs = std::pow(wb, 4);
            res.metadata = {{"||P||_A", ctx.norm("P4")}, {"||Q||_A", ctx.norm("Q4")}, {"w_B", wb}};
        }));
    out.push_back(make("thm_fourth_antidiag:upper", xy, kNoHypothesis, "w_B(antidiag(X,Y))^4",
                       "max{||XX#+Y#Y||_A^2 + 4 w_A(XY)^2, ||X#X+YY#||_A^2 + 4 w_A(YX)^2} / 8",
                       [](Context& ctx, CheckResult& res) {
                           ctx.m_xy();
                           ctx.n_xy();
                           ctx.prod("X", "Y");
                           ctx.prod("Y", "X");
                           const double a = std::pow(ctx.norm("M"), 2) + 4 * std::pow(ctx.w("X*Y"), 2);
                           const double b = std::pow(ctx.norm("N"), 2) + 4 * std::pow(ctx.w("Y*X"), 2);
                           const double wb = ctx.wb("X", "Y");
                           res.lhs = std::pow(wb, 4);
                           res.rhs = std::max(a, b) / 8.0;
                           res.metadata = {{"w_B", wb}, {"w_A(XY)", ctx.w("X*Y")}, {"w_A(YX)", ctx.w("Y*X")}};
                       }));

    out.push_back(make("cor_fourth:lower", t_only, kStrictlyPositive,
                       "||(TT#+T#T)^2 + 4 Re_A(T^2)^2||_A / 16", "w_A(T)^4", [](Context& ctx, CheckResult& res) {
                           const CMat& k = ctx.kit();
                           const CMat& t2 = ctx.t2();
                           ctx.def("K^2+4ReT2^2", [&] {
                               const CMat re = re_a(ctx.frame(), t2);
                               return CMat(k * k + 4.0 * re * re);
                           });
                           res.lhs = ctx.norm("K^2+4ReT2^2") / 16.0;
                           res.rhs = std::pow(ctx.w("T"), 4);
                       }));
    out.push_back(make("cor_fourth:upper", t_only, kStrictlyPositive, "w_A(T)^4",
                       "||TT#+T#T||_A^2 / 8 + w_A(T^2)^2 / 2", [](Context& ctx, CheckResult& res) {
                           ctx.kit();
                           ctx.t2();
                           res.lhs = std::pow(ctx.w("T"), 4);
                           res.rhs = std::pow(ctx.norm("K"), 2) / 8.0 + 0.5 * std::pow(ctx.w("T*T"), 2);
                           res.metadata = {{"||TT#+T#T||_A", ctx.norm("K")}, {"w_A(T^2)", ctx.w("T*T")}};
                       }));

    // Refined fourth-power upper bound, P = T#T + TT#.
    out.push_back(make("thm_refined_fourth", t_only, kStrictlyPositive, "w_A(T)^4",
                       "w_A(T^2)^2 / 4 + w_A(T^2 P + P T^2) / 8 + ||P||_A^2 / 16",
                       [](Context& ctx, CheckResult& res) {
                           const CMat& k = ctx.kit();
                           const CMat& t2 = ctx.t2();
                           ctx.def("T2K+KT2", [&] { return CMat(t2 * k + k * t2); });
                           const double w2 = ctx.w("T*T"), wm = ctx.w("T2K+KT2"), pn = ctx.norm("K");
                           res.lhs = std::pow(ctx.w("T"), 4);
                           res.rhs = 0.25 * w2 * w2 + 0.125 * wm + pn * pn / 16.0;
                           res.metadata = {{"w_A(T^2)", w2},
                                           {"w_A(T^2P+PT^2)", wm},
                                           {"||P||_A", pn},
                                           {"zamani_rhs", std::pow(pn + 2 * w2, 2) / 16.0}};
                       }));

    // Cubic bound and its nilpotent equality cases.
    auto cubic_mixed = [](Context& ctx) -> const CMat& {
        const CMat& t = ctx.get("T");
        const CMat& ts = ctx.sh("T");
        const CMat& t2 = ctx.t2();
        return ctx.def("T2T#+T#T2+TT#T", [&] { return CMat(t2 * ts + ts * t2 + t * ts * t); });
    };
    out.push_back(make("thm_cubic", t_only, kStrictlyPositive, "w_A(T)^3",
                       "w_A(T^3) / 4 + w_A(T^2T# + T#T^2 + TT#T) / 4",
                       [cubic_mixed](Context& ctx, CheckResult& res) {
                           cubic_mixed(ctx);
                           ctx.t3();
                           ctx.kit();
                           const double w = ctx.w("T");
                           res.lhs = std::pow(w, 3);
                           res.rhs = 0.25 * ctx.w("T^3") + 0.25 * ctx.w("T2T#+T#T2+TT#T");
                           const double half_sqrt = 0.5 * std::sqrt(ctx.norm("K"));
                           const double t2_fro = ctx.t2().norm();
                           const bool eq = std::abs(w - half_sqrt) <= 1e-9 * (1 + w);
                           res.metadata = {{"w_A(T)", w},
                                           {"half_sqrt_norm", half_sqrt},
                                           {"||T^2||_F", t2_fro},
                                           {"equality_without_nilpotency", eq && !ctx.square_zero() ? 1.0 : 0.0}};
                       }));
    out.push_back(make(
        "thm_cubic:nilpotent2", t_only, kStrictlyPositive | kSquareZero, "w_A(T)",
        "sqrt(||TT#+T#T||_A) / 2",
        [](Context& ctx, CheckResult& res) {
            ctx.kit();
            res.lhs = ctx.w("T");
            res.rhs = 0.5 * std::sqrt(ctx.norm("K"));
        },
        CheckKind::equality, 1e-7, true));
    out.push_back(make(
        "thm_cubic:nilpotent3", t_only, kStrictlyPositive | kCubeZero, "w_A(T)^3",
        "w_A(T^2T# + T#T^2 + TT#T) / 4",
        [cubic_mixed](Context& ctx, CheckResult& res) {
            cubic_mixed(ctx);
            res.lhs = std::pow(ctx.w("T"), 3);
            res.rhs = 0.25 * ctx.w("T2T#+T#T2+TT#T");
        },
        CheckKind::equality, 1e-7, true));

    for (double r : {1.0, 1.5, 2.0, 3.0}) out.push_back(power_entry("thm_power_r:" + format_exponent(r), r));

    out.push_back(make("thm_lower_fourth", t_only, kStrictlyPositive,
                       "C_A(T^2)^2 / 4 + c_A(T^2 P + P T^2) / 8 + ||P||_A^2 / 16", "w_A(T)^4",
                       [](Context& ctx, CheckResult& res) {
                           const CMat& k = ctx.kit();
                           const CMat& t2 = ctx.t2();
                           ctx.def("T2K+KT2", [&] { return CMat(t2 * k + k * t2); });
                           const double bc = ctx.big_c("T*T"), cm = ctx.c("T2K+KT2"), pn = ctx.norm("K");
                           res.lhs = 0.25 * bc * bc + 0.125 * cm + pn * pn / 16.0;
                           res.rhs = std::pow(ctx.w("T"), 4);
                           res.metadata = {{"C_A(T^2)", bc},
                                           {"c_A(T^2P+PT^2)", cm},
                                           {"||P||_A", pn},
                                           {"kittaneh_16", pn * pn / 16.0},
                                           {"norm4_16", std::pow(ctx.norm("T"), 4) / 16.0}};
                       }));

    // Sums of products.
    auto prod_pm = [](bool minus, bool same) {
        return [minus, same](Context& ctx, CheckResult& res) {
            const CMat& p = ctx.get("P");
            const CMat& q = ctx.get("Q");
            const CMat& x = ctx.get("X");
            const CMat& y = same ? x : ctx.get("Y");
            const CMat& ps = ctx.sh("P");
            const CMat& qs = ctx.sh("Q");
            const std::string key = std::string("PXQ#") + (minus ? "-" : "+") + (same ? "QXP#" : "QYP#");
            ctx.def(key, [&] { return CMat(p * x * qs + (minus ? -1.0 : 1.0) * (q * y * ps)); });
            const double factor = 2 * ctx.norm("P") * ctx.norm("Q");
            const double radius = same ? ctx.w("X") : ctx.wb("X", "Y");
            res.lhs = ctx.w(key);
            res.rhs = factor * radius;
            res.metadata = {{"||P||_A", ctx.norm("P")}, {"||Q||_A", ctx.norm("Q")}, {"radius", radius}};
        };
    };
    const std::vector<std::string> pqxy{"P", "Q", "X", "Y"};
    out.push_back(make("thm_prod_pm:plus", pqxy, kNoHypothesis, "w_A(PXQ# + QYP#)",
                       "2 ||P||_A ||Q||_A w_B(antidiag(X,Y))", prod_pm(false, false)));
    out.push_back(make("thm_prod_pm:minus", pqxy, kStrictlyPositive, "w_A(PXQ# - QYP#)",
                       "2 ||P||_A ||Q||_A w_B(antidiag(X,Y))", prod_pm(true, false)));
    out.push_back(make("thm_prod_pm:particular_plus", {"P", "Q", "X"}, kStrictlyPositive, "w_A(PXQ# + QXP#)",
                       "2 ||P||_A ||Q||_A w_A(X)", prod_pm(false, true)));
    out.push_back(make("thm_prod_pm:particular_minus", {"P", "Q", "X"}, kStrictlyPositive, "w_A(PXQ# - QXP#)",
                       "2 ||P||_A ||Q||_A w_A(X)", prod_pm(true, true)));

    auto commutator = [](bool minus) {
        return [minus](Context& ctx, CheckResult& res) {
            const CMat& t = ctx.get("T");
            const CMat& q = ctx.get("Q");
            const CMat& qs = ctx.sh("Q");
            const std::string key = minus ? "TQ#-QT" : "TQ#+QT";
            ctx.def(key, [&] { return CMat(t * qs + (minus ? -1.0 : 1.0) * (q * t)); });
            res.lhs = ctx.w(key);
            res.rhs = 2 * ctx.w("T") * ctx.norm("Q");
        };
    };
    out.push_back(make("cor_commutator:plus", {"T", "Q"}, kStrictlyPositive, "w_A(TQ# + QT)", "2 w_A(T) ||Q||_A",
                       commutator(false)));
    out.push_back(make("cor_commutator:minus", {"T", "Q"}, kStrictlyPositive, "w_A(TQ# - QT)", "2 w_A(T) ||Q||_A",
                       commutator(true)));

    // Pointwise bound, falsified by sampling x; the worst sample is reported.
    out.push_back(make(
        "lem_pointwise", {"T", "X", "Y"}, kStrictlyPositive, "|<X#TYx,x>_A| + |<Y#TXx,x>_A|",
        "2 w_A(T) ||Xx||_A ||Yx||_A", [](Context& ctx, CheckResult& res) {
            const Frame& f = ctx.frame();
            const CMat& t = ctx.get("T");
            const CMat& x = ctx.get("X");
            const CMat& y = ctx.get("Y");
            const CMat& xtY = ctx.def("X#TY", [&] { return CMat(ctx.sh("X") * t * y); });
            const CMat& ytX = ctx.def("Y#TX", [&] { return CMat(ctx.sh("Y") * t * x); });
            const double w = ctx.w("T");
            Rng rng(mix64(ctx.params().seed ^ 0x706f696e74ULL));
            double worst = std::numeric_limits<double>::infinity();
            const int samples = std::max(1, ctx.params().pointwise_samples);
            for (int s = 0; s < samples; ++s) {
                CVec v = f.projector() * rng.gaussian_vector(f.dim());
                const double nv = a_norm_vec(f, v);
                if (nv <= 0) continue;
                v /= nv;
                const double l = std::abs(a_inner(f, CVec(xtY * v), v)) + std::abs(a_inner(f, CVec(ytX * v), v));
                const double r = 2 * w * a_norm_vec(f, CVec(x * v)) * a_norm_vec(f, CVec(y * v));
                const double rel = (r - l) / (1 + std::abs(r));
                if (rel < worst) {
                    worst = rel;
                    res.lhs = l;
                    res.rhs = r;
                    res.metadata["worst_sample"] = s;
                }
            }
            res.metadata["samples"] = samples;
        }));

    auto crawford_prod = [](bool first) {
        return [first](Context& ctx, CheckResult& res) {
            const CMat& t = ctx.get("T");
            ctx.def("X#TY", [&] { return CMat(ctx.sh("X") * t * ctx.get("Y")); });
            ctx.def("Y#TX", [&] { return CMat(ctx.sh("Y") * t * ctx.get("X")); });
            res.lhs = first ? ctx.c("X#TY") + ctx.w("Y#TX") : ctx.w("X#TY") + ctx.c("Y#TX");
            res.rhs = 2 * ctx.w("T") * ctx.norm("X") * ctx.norm("Y");
        };
    };
    out.push_back(make("thm_crawford_prod:first", {"T", "X", "Y"}, kStrictlyPositive,
                       "c_A(X#TY) + w_A(Y#TX)", "2 w_A(T) ||X||_A ||Y||_A", crawford_prod(true)));
    out.push_back(make("thm_crawford_prod:second", {"T", "X", "Y"}, kStrictlyPositive,
                       "w_A(X#TY) + c_A(Y#TX)", "2 w_A(T) ||X||_A ||Y||_A", crawford_prod(false)));

    out.push_back(make("cor_prod_improved:first", xy, kStrictlyPositive, "w_A(XY)",
                       "2 w_A(X) ||Y||_A - c_A(Y#X)", [](Context& ctx, CheckResult& res) {
                           ctx.prod("X", "Y");
                           ctx.sh("Y");
                           ctx.prod("Y#", "X");
                           const double base = 2 * ctx.w("X") * ctx.norm("Y");
                           res.lhs = ctx.w("X*Y");
                           res.rhs = base - ctx.c("Y#*X");
                           res.metadata = {{"base_rhs", base}, {"c_A(Y#X)", ctx.c("Y#*X")}};
                       }));
    out.push_back(make("cor_prod_improved:second", xy, kStrictlyPositive, "w_A(XY)",
                       "2 w_A(Y) ||X||_A - c_A(YX#)", [](Context& ctx, CheckResult& res) {
                           ctx.prod("X", "Y");
                           ctx.sh("X");
                           ctx.prod("Y", "X#");
                           const double base = 2 * ctx.w("Y") * ctx.norm("X");
                           res.lhs = ctx.w("X*Y");
                           res.rhs = base - ctx.c("Y*X#");
                           res.metadata = {{"base_rhs", base}, {"c_A(YX#)", ctx.c("Y*X#")}};
                       }));

    // Lower bounds on the antidiagonal radius.
    auto block_lower = [](const char* part) {
        const std::string p = part;
        return [p](Context& ctx, CheckResult& res) {
            ctx.prod("X", "Y");
            ctx.prod("Y", "X");
            const double wb = ctx.wb("X", "Y");
            const double nx = ctx.norm("X"), ny = ctx.norm("Y");
            if (p == "i") {
                res.lhs = nx * nx + ctx.c("Y*X");
                res.rhs = 2 * wb * nx;
            } else if (p == "ii") {
                res.lhs = std::pow(ctx.minmod("X"), 2) + ctx.w("Y*X");
                res.rhs = 2 * wb * nx;
            } else if (p == "iii") {
                res.lhs = ny * ny + ctx.c("X*Y");
                res.rhs = 2 * wb * ny;
            } else {
                res.lhs = std::pow(ctx.minmod("Y"), 2) + ctx.w("X*Y");
                res.rhs = 2 * wb * ny;
            }
            res.metadata = {{"w_B", wb}};
        };
    };
    out.push_back(make("thm_block_lower:i", xy, kStrictlyPositive, "||X||_A^2 + c_A(YX)",
                       "2 w_B(antidiag(X,Y)) ||X||_A", block_lower("i")));
    out.push_back(make("thm_block_lower:ii", xy, kStrictlyPositive, "m_A(X)^2 + w_A(YX)",
                       "2 w_B(antidiag(X,Y)) ||X||_A", block_lower("ii")));
    out.push_back(make("thm_block_lower:iii", xy, kStrictlyPositive, "||Y||_A^2 + c_A(XY)",
                       "2 w_B(antidiag(X,Y)) ||Y||_A", block_lower("iii")));
    out.push_back(make("thm_block_lower:iv", xy, kStrictlyPositive, "m_A(Y)^2 + w_A(XY)",
                       "2 w_B(antidiag(X,Y)) ||Y||_A", block_lower("iv")));

    // Lower bounds for w_A(T) itself.
    auto wa_lower = [](int which) {
        return [which](Context& ctx, CheckResult& res) {
            ctx.t2();
            const double n = ctx.norm("T");
            const double first = n / 2 + ctx.c("T*T") / (2 * n);
            const double second = (std::pow(ctx.minmod("T"), 2) + ctx.w("T*T")) / (2 * n);
            res.lhs = which == 0 ? first : which == 1 ? second : std::max(first, second);
            res.rhs = ctx.w("T");
            res.metadata = {{"||T||_A", n}, {"first", first}, {"second", second}};
        };
    };
    out.push_back(make("thm_wa_lower:first", t_only, kStrictlyPositive | kNonzeroNorm,
                       "||T||_A / 2 + c_A(T^2) / (2 ||T||_A)", "w_A(T)", wa_lower(0)));
    out.push_back(make("thm_wa_lower:second", t_only, kStrictlyPositive | kNonzeroNorm,
                       "(m_A(T)^2 + w_A(T^2)) / (2 ||T||_A)", "w_A(T)", wa_lower(1)));
    out.push_back(make("thm_wa_lower:combined", t_only, kStrictlyPositive | kNonzeroNorm,
                       "max{||T||_A^2 + c_A(T^2), m_A(T)^2 + w_A(T^2)} / (2 ||T||_A)", "w_A(T)", wa_lower(2)));

    std::sort(out.begin(), out.end(),
              [](const Entry& a, const Entry& b) { return a.def.check_id < b.def.check_id; });
    return out;
}

const std::vector<Entry>& entries() {
    static const std::vector<Entry> table = build_registry();
    return table;
}

/// Reason the instance falls outside the check's hypothesis, if any.
std::optional<std::string> unmet_hypothesis(Context& ctx, unsigned hyp, std::optional<double> exponent) {
    const Frame& f = ctx.frame();
    if (f.rank() == 0) return "empty_range";
    if ((hyp & kStrictlyPositive) && !f.strictly_positive()) return "requires A > 0";
    if ((hyp & kIntegerOrPositive) && exponent && *exponent != std::floor(*exponent) && !f.strictly_positive())
        return "unsupported_exponent: non-integer r needs A > 0";
    if ((hyp & kNonzeroNorm) && ctx.norm("T") <= kDefaultTol * (1 + ctx.get("T").norm())) return "||T||_A = 0";
    if ((hyp & kSquareZero) && !ctx.square_zero()) return "T^2 != 0";
    if ((hyp & kCubeZero) && !ctx.cube_zero()) return "T^3 != 0";
    return std::nullopt;
}

CheckResult evaluate(const Entry& e, Context& ctx, double tol) {
    CheckResult res;
    res.check_id = e.def.check_id;
    res.kind = e.def.kind;
    res.tol = std::max(tol, e.def.tol_floor);
    if (auto reason = unmet_hypothesis(ctx, e.def.hypothesis, e.exponent)) {
        res.hypothesis_met = false;
        res.notes["skip_reason"] = *reason;
    } else {
        e.fn(ctx, res);
    }
    if (!res.hypothesis_met) {
        res.lhs = res.rhs = res.slack = kNaN;
        res.pass = true;
        return res;
    }
    res.slack = res.kind == CheckKind::equality ? -std::abs(res.rhs - res.lhs) : res.rhs - res.lhs;
    res.pass = check_passes(res.kind, res.lhs, res.rhs, res.tol, e.def.absolute_tol);
    return res;
}

} // namespace

const std::vector<CheckDef>& registry() {
    static const std::vector<CheckDef> defs = [] {
        std::vector<CheckDef> out;
        for (const auto& e : entries()) out.push_back(e.def);
        return out;
    }();
    return defs;
}

const CheckDef* find_check(const std::string& check_id) {
    for (const auto& d : registry())
        if (d.check_id == check_id) return &d;
    return nullptr;
}

std::vector<std::string> select_checks(const std::string& filter) {
    std::vector<std::string> ids;
    for (const auto& d : registry())
        if (filter == "all" || filter.empty() || d.check_id == filter || d.family == filter) ids.push_back(d.check_id);
    if (ids.empty()) throw Error(ErrorCode::UnknownCheckId, "no check matches '" + filter + "'");
    return ids;
}

CheckResult run_check(const std::string& check_id, const Frame& f, const OperandMap& operands,
                      const CheckParams& params, const SweepConfig& cfg, double tol) {
    Context ctx(f, operands, params, cfg);
    if (check_id == "thm_power_r") {
        const double r = params.r.value_or(1.0);
        if (!(r >= 1.0)) throw Error(ErrorCode::UnsupportedExponent, "thm_power_r needs r >= 1");
        if (r != std::floor(r) && !f.strictly_positive())
            throw Error(ErrorCode::UnsupportedExponent, "non-integer r with singular A is not supported");
        return evaluate(power_entry("thm_power_r", r), ctx, tol);
    }
    for (const auto& e : entries())
        if (e.def.check_id == check_id) return evaluate(e, ctx, tol);
    throw Error(ErrorCode::UnknownCheckId, "unknown check id '" + check_id + "'");
}

std::vector<CheckResult> run_all(const Frame& f, const OperandMap& operands, const CheckParams& params,
                                 const SweepConfig& cfg, double tol, const std::vector<std::string>& ids) {
    Context ctx(f, operands, params, cfg);
    std::vector<CheckResult> out;
    for (const auto& e : entries()) {
        if (!ids.empty() && std::find(ids.begin(), ids.end(), e.def.check_id) == ids.end()) continue;
        try {
            out.push_back(evaluate(e, ctx, tol));
        } catch (const std::exception& ex) {
            CheckResult res;
            res.check_id = e.def.check_id;
            res.kind = e.def.kind;
            res.lhs = res.rhs = res.slack = kNaN;
            res.pass = false;
            res.notes["error"] = ex.what();
            out.push_back(std::move(res));
        }
    }
    return out;
}

} // namespace anr
