#pragma once

// Input parsing, report assembly and text / JSON emission for the qzero tool.
//
// Input is a list of quadruples "w x y z" for a_0, a_1, ..., separated by commas
// (or newlines); '#' starts a comment. The JSON report schema is
// "qzero-report/1": fields in a fixed order, quaternions as [w, x, y, z],
// reals rounded to 12 significant digits.

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qzero/bounds.hpp"
#include "qzero/oracle.hpp"
#include "qzero/zerofree.hpp"

namespace qzero {

inline constexpr const char* kReportSchema = "qzero-report/1";
inline constexpr double kContainmentSlack = 1e-9;

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line, int coefficient, int field = 0)
        : std::runtime_error(msg), line(line), coefficient(coefficient), field(field) {}
    int line;         // 1-based
    int coefficient;  // 0-based index k of a_k
    int field;        // 1-based component, 0 for the whole quadruple
};

enum class InputForm { f_form, g_form };

struct InputSpec {
    std::vector<Quaternion> coefficients;  // a_0 .. a_{n-1}, or a_0 .. a_n with `leading`
    InputForm form = InputForm::f_form;
    bool leading = false;
    double t = 1.0;
    std::size_t samples = kDefaultSamples;
    std::uint64_t seed = 0;
    double tol_res = 1e-8;
    std::vector<BoundMethod> bounds{std::begin(kAllBoundMethods), std::end(kAllBoundMethods)};
    bool run_oracle = true;
    bool timing = false;
};

/// Coefficient text to an InputSpec with default options.
inline InputSpec parse_input(std::string_view text) {
    InputSpec spec;
    int line = 1;
    int coeff_line = 1;
    std::vector<std::string> fields;
    std::string token;
    bool saw_separator_only = false;

    auto end_token = [&] {
        if (!token.empty()) fields.push_back(std::move(token));
        token.clear();
    };
    auto end_quadruple = [&](bool explicit_comma) {
        end_token();
        const int k = static_cast<int>(spec.coefficients.size());
        if (fields.empty()) {
            if (explicit_comma) throw ParseError("line " + std::to_string(coeff_line) + ", coefficient " +
                                                     std::to_string(k) + ": empty coefficient",
                                                 coeff_line, k);
            return;
        }
        if (fields.size() != 4)
            throw ParseError("line " + std::to_string(coeff_line) + ", coefficient " + std::to_string(k) +
                                 ": expected 4 numbers, got " + std::to_string(fields.size()),
                             coeff_line, k);
        double v[4];
        for (int i = 0; i < 4; ++i) {
            const auto& f = fields[static_cast<std::size_t>(i)];
            const auto* first = f.data();
            const auto* last = f.data() + f.size();
            if (*first == '+') ++first;
            const auto [ptr, ec] = std::from_chars(first, last, v[i]);
            if (ec != std::errc{} || ptr != last || !std::isfinite(v[i]))
                throw ParseError("line " + std::to_string(coeff_line) + ", coefficient " + std::to_string(k) +
                                     ", field " + std::to_string(i + 1) + ": malformed number '" + f + "'",
                                 coeff_line, k, i + 1);
        }
        spec.coefficients.push_back({v[0], v[1], v[2], v[3]});
        fields.clear();
    };

    bool in_comment = false;
    for (char ch : text) {
        if (in_comment) {
            if (ch == '\n') {
                in_comment = false;
                end_quadruple(false);
                ++line;
                coeff_line = line;
            }
            continue;
        }
        if (ch == '#') {
            in_comment = true;
        } else if (ch == ',' || ch == ';') {
            end_quadruple(true);
            coeff_line = line;
            saw_separator_only = true;
        } else if (ch == '\n') {
            end_quadruple(false);
            ++line;
            coeff_line = line;
        } else if (ch == ' ' || ch == '\t' || ch == '\r') {
            end_token();
            if (fields.empty()) coeff_line = line;
        } else {
            token.push_back(ch);
            saw_separator_only = false;
        }
    }
    end_quadruple(false);
    if (saw_separator_only && fields.empty() && !spec.coefficients.empty())
        throw ParseError("line " + std::to_string(line) + ": trailing separator", line,
                         static_cast<int>(spec.coefficients.size()));
    if (spec.coefficients.empty()) throw ParseError("no coefficients given", line, 0);
    return spec;
}

inline InputSpec parse_input_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path, 0, 0);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_input(ss.str());
}

/// The monic f-form polynomial described by `spec`, with notes on conversions.
inline QPolynomial canonical_polynomial(const InputSpec& spec, std::vector<std::string>* notes = nullptr) {
    std::vector<Quaternion> c = spec.coefficients;
    if (spec.leading) {
        if (c.size() < 2) throw ParseError("--leading needs a_0 .. a_n with n >= 1", 1, 0);
        const Quaternion lead = c.back();
        if (lead.is_zero()) throw ParseError("leading coefficient is zero", 1, static_cast<int>(c.size()) - 1);
        const Quaternion inv = qinv(lead);
        c.pop_back();
        // f-form: f(q) a_n^{-1}; g-form: a_n^{-1} g(q)
        for (auto& a : c) a = spec.form == InputForm::f_form ? a * inv : inv * a;
        if (notes) notes->push_back("normalized by the inverse of the leading coefficient");
    }
    if (spec.form == InputForm::g_form) {
        for (auto& a : c) a = a.conj();
        if (notes)
            notes->push_back(
                "g-form input converted to f-form by conjugating coefficients; zeros of the input are the "
                "conjugates of the zeros listed");
    }
    return QPolynomial(std::move(c));
}

// Report model, one field per JSON member.

struct BallView {
    Quaternion center;
    double radius = 0.0;
    bool open = false;
    bool operator==(const BallView&) const = default;
};

struct BoundView {
    std::string method;
    bool applicable = false;
    std::string reason;
    std::optional<double> radius;  // origin-centered radius enclosing the region
    std::vector<BallView> balls;
    std::map<std::string, double> parameters;
    bool operator==(const BoundView&) const = default;
};

struct IsolatedView {
    Quaternion zero;
    double residual = 0.0;
    int multiplicity = 1;
    bool operator==(const IsolatedView&) const = default;
};

struct SphericalView {
    double re = 0.0, normsq = 0.0, residual = 0.0;
    int multiplicity = 1;
    bool operator==(const SphericalView&) const = default;
};

struct ZerosView {
    std::vector<IsolatedView> isolated;
    std::vector<SphericalView> spherical;
    int deficit = 0;
    bool residuals_ok = true;
    std::string digest;
    bool operator==(const ZerosView&) const = default;
};

struct ContainmentView {
    std::string method;
    bool pass = true;
    std::optional<double> worst_margin;
    bool operator==(const ContainmentView&) const = default;
};

struct ZeroFreeView {
    double t = 1.0;
    int degree = 1;
    Quaternion center;
    double radius = 0.0;
    double max_modulus = 0.0;
    Quaternion slice_center;
    double slice_max_modulus = 0.0;
    std::optional<bool> verified;
    std::optional<double> min_distance;
    std::optional<bool> slice_verified;
    std::optional<double> slice_min_distance;
    bool operator==(const ZeroFreeView&) const = default;
};

struct Report {
    std::string form = "f";
    int degree = 0;
    std::vector<Quaternion> coefficients;
    int lacunary_index = -1;
    std::vector<std::string> notes;

    double t = 1.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    double tol_res = 1e-8;
    bool oracle = true;

    std::vector<BoundView> bounds;
    std::optional<ZerosView> zeros;
    std::optional<std::vector<ContainmentView>> containment;
    std::optional<ZeroFreeView> zero_free;
    std::optional<double> timing_ms;

    bool operator==(const Report&) const = default;

    /// 0 when every containment and the zero-free check pass, 1 otherwise.
    int exit_status() const {
        if (containment)
            for (const auto& c : *containment)
                if (!c.pass) return 1;
        if (zero_free && zero_free->verified && !*zero_free->verified) return 1;
        return 0;
    }
};

inline BoundView view_of(const BoundResult& b) {
    BoundView v{std::string(to_string(b.method)), b.applicable(), b.reason, std::nullopt, {}, b.parameters};
    if (b.region) {
        v.radius = b.region->enclosing_radius();
        for (const auto& ball : b.region->balls()) v.balls.push_back({ball.center, ball.radius, ball.open});
    }
    return v;
}

inline Report run_report(const InputSpec& spec) {
    const auto t0 = std::chrono::steady_clock::now();
    Report r;
    const QPolynomial f = canonical_polynomial(spec, &r.notes);
    r.form = spec.form == InputForm::f_form ? "f" : "g";
    r.degree = f.degree();
    r.coefficients.assign(f.coeffs().begin(), f.coeffs().end());
    r.lacunary_index = f.lacunary_index();
    r.t = spec.t;
    r.samples = spec.samples;
    r.seed = spec.seed;
    r.tol_res = spec.tol_res;
    r.oracle = spec.run_oracle;

    std::vector<BoundResult> results;
    for (auto& b : all_bounds(f))
        if (std::ranges::find(spec.bounds, b.method) != spec.bounds.end()) results.push_back(std::move(b));
    for (const auto& b : results) r.bounds.push_back(view_of(b));

    const ZeroFreeBall zf = zero_free_ball(f, spec.t, spec.samples, spec.seed);
    ZeroFreeView zv{zf.t, zf.degree, zf.center, zf.radius, zf.sphere.value, zf.slice.argmax, zf.slice.value,
                    std::nullopt, std::nullopt, std::nullopt, std::nullopt};

    if (spec.run_oracle) {
        RootConfig cfg;
        cfg.tol_res = spec.tol_res;
        cfg.seed = spec.seed;
        const ZeroSet zs = find_zeros(f, cfg);
        ZerosView z;
        for (const auto& iz : zs.isolated) {
            z.isolated.push_back({iz.zero, iz.residual, iz.multiplicity});
            z.residuals_ok = z.residuals_ok && iz.residual <= spec.tol_res * zs.scale;
        }
        for (const auto& sz : zs.spherical) z.spherical.push_back({sz.cls.re, sz.cls.normsq, sz.residual, sz.multiplicity});
        z.deficit = zs.deficit;
        z.digest = zs.digest;
        r.zeros = std::move(z);

        std::vector<ContainmentView> cv;
        for (const auto& b : results) {
            if (!b.region) continue;
            const auto rep = verify_containment(zs, *b.region, kContainmentSlack);
            cv.push_back({std::string(to_string(b.method)), rep.pass,
                          std::isfinite(rep.worst_margin) ? std::optional<double>(rep.worst_margin) : std::nullopt});
        }
        r.containment = std::move(cv);

        const auto ex = verify_exclusion(zs, zf.ball(), kContainmentSlack);
        const auto exs = verify_exclusion(zs, zf.slice_ball(), kContainmentSlack);
        zv.verified = ex.pass;
        zv.min_distance = ex.min_distance;
        zv.slice_verified = exs.pass;
        zv.slice_min_distance = exs.min_distance;
    }
    r.zero_free = zv;
    if (spec.timing)
        r.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

// JSON

namespace detail {

using ojson = nlohmann::ordered_json;

inline double round12(double v) {
    if (v == 0.0) return 0.0;  // drops the sign of -0
    if (!std::isfinite(v)) return v;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

inline ojson quat_json(const Quaternion& q) {
    return ojson::array({round12(q.w), round12(q.x), round12(q.y), round12(q.z)});
}

inline Quaternion quat_from(const ojson& j) {
    if (!j.is_array() || j.size() != 4) throw std::invalid_argument("report: quaternion must be a 4-element array");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

template <class T>
ojson opt_json(const std::optional<T>& v) {
    if (!v) return nullptr;
    if constexpr (std::is_same_v<T, double>) return round12(*v);
    else return *v;
}

template <class T>
std::optional<T> opt_from(const ojson& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<T>();
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const Report& r) {
    using detail::ojson;
    using detail::quat_json;
    using detail::round12;

    ojson poly;
    poly["degree"] = r.degree;
    poly["form"] = r.form;
    poly["coefficients"] = ojson::array();
    for (const auto& c : r.coefficients) poly["coefficients"].push_back(quat_json(c));
    poly["lacunary_index"] = r.lacunary_index;
    poly["notes"] = r.notes;

    ojson opts;
    opts["t"] = round12(r.t);
    opts["samples"] = r.samples;
    opts["seed"] = r.seed;
    opts["tol_res"] = round12(r.tol_res);
    opts["oracle"] = r.oracle;

    ojson bounds = ojson::array();
    for (const auto& b : r.bounds) {
        ojson jb;
        jb["method"] = b.method;
        jb["applicable"] = b.applicable;
        jb["reason"] = b.reason;
        jb["radius"] = detail::opt_json(b.radius);
        jb["balls"] = ojson::array();
        for (const auto& ball : b.balls)
            jb["balls"].push_back(
                ojson{{"center", quat_json(ball.center)}, {"radius", round12(ball.radius)}, {"open", ball.open}});
        jb["parameters"] = ojson::object();
        for (const auto& [k, v] : b.parameters) jb["parameters"][k] = round12(v);
        bounds.push_back(std::move(jb));
    }

    ojson zeros = nullptr;
    if (r.zeros) {
        zeros = ojson::object();
        zeros["isolated"] = ojson::array();
        for (const auto& z : r.zeros->isolated)
            zeros["isolated"].push_back(ojson{{"zero", quat_json(z.zero)},
                                              {"residual", round12(z.residual)},
                                              {"multiplicity", z.multiplicity}});
        zeros["spherical"] = ojson::array();
        for (const auto& s : r.zeros->spherical)
            zeros["spherical"].push_back(ojson{{"re", round12(s.re)},
                                               {"normsq", round12(s.normsq)},
                                               {"residual", round12(s.residual)},
                                               {"multiplicity", s.multiplicity}});
        zeros["deficit"] = r.zeros->deficit;
        zeros["residuals_ok"] = r.zeros->residuals_ok;
        zeros["digest"] = r.zeros->digest;
    }

    ojson containment = nullptr;
    if (r.containment) {
        containment = ojson::array();
        for (const auto& c : *r.containment)
            containment.push_back(
                ojson{{"method", c.method}, {"pass", c.pass}, {"worst_margin", detail::opt_json(c.worst_margin)}});
    }

    ojson zero_free = nullptr;
    if (r.zero_free) {
        const auto& z = *r.zero_free;
        zero_free = ojson{{"t", round12(z.t)},
                          {"degree", z.degree},
                          {"center", quat_json(z.center)},
                          {"radius", round12(z.radius)},
                          {"max_modulus", round12(z.max_modulus)},
                          {"slice_center", quat_json(z.slice_center)},
                          {"slice_max_modulus", round12(z.slice_max_modulus)},
                          {"verified", detail::opt_json(z.verified)},
                          {"min_distance", detail::opt_json(z.min_distance)},
                          {"slice_verified", detail::opt_json(z.slice_verified)},
                          {"slice_min_distance", detail::opt_json(z.slice_min_distance)}};
    }

    ojson out;
    out["schema"] = kReportSchema;
    out["polynomial"] = std::move(poly);
    out["options"] = std::move(opts);
    out["bounds"] = std::move(bounds);
    out["zeros"] = std::move(zeros);
    out["containment"] = std::move(containment);
    out["zero_free"] = std::move(zero_free);
    out["timing_ms"] = detail::opt_json(r.timing_ms);
    return out;
}

inline Report report_from_json(const nlohmann::ordered_json& j) {
    using detail::opt_from;
    using detail::quat_from;
    if (j.at("schema").get<std::string>() != kReportSchema) throw std::invalid_argument("report: unknown schema");
    Report r;
    const auto& poly = j.at("polynomial");
    r.degree = poly.at("degree").get<int>();
    r.form = poly.at("form").get<std::string>();
    for (const auto& c : poly.at("coefficients")) r.coefficients.push_back(quat_from(c));
    r.lacunary_index = poly.at("lacunary_index").get<int>();
    r.notes = poly.at("notes").get<std::vector<std::string>>();

    const auto& opts = j.at("options");
    r.t = opts.at("t").get<double>();
    r.samples = opts.at("samples").get<std::uint64_t>();
    r.seed = opts.at("seed").get<std::uint64_t>();
    r.tol_res = opts.at("tol_res").get<double>();
    r.oracle = opts.at("oracle").get<bool>();

    for (const auto& jb : j.at("bounds")) {
        BoundView b;
        b.method = jb.at("method").get<std::string>();
        b.applicable = jb.at("applicable").get<bool>();
        b.reason = jb.at("reason").get<std::string>();
        b.radius = opt_from<double>(jb.at("radius"));
        for (const auto& ball : jb.at("balls"))
            b.balls.push_back({quat_from(ball.at("center")), ball.at("radius").get<double>(), ball.at("open").get<bool>()});
        for (const auto& [k, v] : jb.at("parameters").items()) b.parameters[k] = v.get<double>();
        r.bounds.push_back(std::move(b));
    }

    if (const auto& jz = j.at("zeros"); !jz.is_null()) {
        ZerosView z;
        for (const auto& e : jz.at("isolated"))
            z.isolated.push_back(
                {quat_from(e.at("zero")), e.at("residual").get<double>(), e.at("multiplicity").get<int>()});
        for (const auto& e : jz.at("spherical"))
            z.spherical.push_back({e.at("re").get<double>(), e.at("normsq").get<double>(), e.at("residual").get<double>(),
                                   e.at("multiplicity").get<int>()});
        z.deficit = jz.at("deficit").get<int>();
        z.residuals_ok = jz.at("residuals_ok").get<bool>();
        z.digest = jz.at("digest").get<std::string>();
        r.zeros = std::move(z);
    }

    if (const auto& jc = j.at("containment"); !jc.is_null()) {
        std::vector<ContainmentView> cv;
        for (const auto& e : jc)
            cv.push_back({e.at("method").get<std::string>(), e.at("pass").get<bool>(), opt_from<double>(e.at("worst_margin"))});
        r.containment = std::move(cv);
    }

    if (const auto& jf = j.at("zero_free"); !jf.is_null()) {
        ZeroFreeView z;
        z.t = jf.at("t").get<double>();
        z.degree = jf.at("degree").get<int>();
        z.center = quat_from(jf.at("center"));
        z.radius = jf.at("radius").get<double>();
        z.max_modulus = jf.at("max_modulus").get<double>();
        z.slice_center = quat_from(jf.at("slice_center"));
        z.slice_max_modulus = jf.at("slice_max_modulus").get<double>();
        z.verified = opt_from<bool>(jf.at("verified"));
        z.min_distance = opt_from<double>(jf.at("min_distance"));
        z.slice_verified = opt_from<bool>(jf.at("slice_verified"));
        z.slice_min_distance = opt_from<double>(jf.at("slice_min_distance"));
        r.zero_free = z;
    }
    r.timing_ms = opt_from<double>(j.at("timing_ms"));
    return r;
}

inline std::string emit_json(const Report& r) { return to_json(r).dump(2) + "\n"; }

inline Report parse_report_json(std::string_view text) {
    return report_from_json(nlohmann::ordered_json::parse(text.begin(), text.end()));
}

namespace detail {

inline std::string fmt_quat(const Quaternion& q) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%+.6f %+.6fi %+.6fj %+.6fk", q.w, q.x, q.y, q.z);
    return buf;
}

inline std::string fmt_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace detail

/// Aligned table of bounds sorted by radius, then zeros and the zero-free ball.
inline std::string emit_text(const Report& r) {
    std::ostringstream os;
    os << "polynomial (" << r.form << "-form input), degree " << r.degree << ", lacunary index " << r.lacunary_index
       << "\n";
    for (std::size_t k = 0; k < r.coefficients.size(); ++k)
        os << "  a_" << k << " = " << detail::fmt_quat(r.coefficients[k]) << "\n";
    for (const auto& n : r.notes) os << "  note: " << n << "\n";

    std::vector<const BoundView*> order;
    for (const auto& b : r.bounds) order.push_back(&b);
    std::ranges::stable_sort(order, [](const BoundView* a, const BoundView* b) {
        if (a->applicable != b->applicable) return a->applicable;
        return a->radius.value_or(0.0) < b->radius.value_or(0.0);
    });
    const BoundView* optimal = nullptr;
    for (const auto* b : order)
        if (b->applicable && b->balls.size() == 1) {
            optimal = b;
            break;
        }

    std::map<std::string, const ContainmentView*> verdicts;
    if (r.containment)
        for (const auto& c : *r.containment) verdicts[c.method] = &c;

    os << "\n" << std::left << std::setw(20) << "bound" << std::setw(18) << "radius" << std::setw(8) << "balls"
       << std::setw(12) << "contained" << "note\n";
    for (const auto* b : order) {
        os << std::setw(20) << b->method;
        os << std::setw(18) << (b->radius ? detail::fmt_real(*b->radius) : std::string("-"));
        os << std::setw(8) << (b->applicable ? std::to_string(b->balls.size()) : std::string("-"));
        std::string verdict = "-";
        if (auto it = verdicts.find(b->method); it != verdicts.end()) verdict = it->second->pass ? "yes" : "NO";
        os << std::setw(12) << verdict;
        if (!b->applicable) os << "not applicable: " << b->reason;
        if (b == optimal) os << "OPTIMAL";
        os << "\n";
    }

    if (r.zeros) {
        os << "\nzeros\n";
        for (const auto& z : r.zeros->isolated)
            os << "  isolated  " << detail::fmt_quat(z.zero) << "  |q| = " << detail::fmt_real(z.zero.norm())
               << "  residual " << detail::fmt_real(z.residual)
               << (z.multiplicity > 1 ? "  multiplicity " + std::to_string(z.multiplicity) : std::string()) << "\n";
        for (const auto& s : r.zeros->spherical)
            os << "  spherical re = " << detail::fmt_real(s.re) << ", |q|^2 = " << detail::fmt_real(s.normsq)
               << "  residual " << detail::fmt_real(s.residual)
               << (s.multiplicity > 1 ? "  multiplicity " + std::to_string(s.multiplicity) : std::string()) << "\n";
        if (r.zeros->deficit != 0) os << "  WARNING: " << r.zeros->deficit << " zero(s) unresolved\n";
    } else {
        os << "\nzeros: oracle skipped\n";
    }

    if (r.zero_free) {
        const auto& z = *r.zero_free;
        os << "\nzero-free ball on |q| = " << detail::fmt_real(z.t) << "\n"
           << "  center " << detail::fmt_quat(z.center) << "  max |f| = " << detail::fmt_real(z.max_modulus) << "\n"
           << "  radius " << detail::fmt_real(z.radius) << "\n"
           << "  complex-slice center " << detail::fmt_quat(z.slice_center)
           << "  max |f| = " << detail::fmt_real(z.slice_max_modulus) << "\n";
        if (z.verified)
            os << "  verified: " << (*z.verified ? "yes" : "NO") << ", nearest zero at "
               << detail::fmt_real(z.min_distance.value_or(0.0)) << "\n";
    }
    if (r.timing_ms) os << "\ntime " << detail::fmt_real(*r.timing_ms) << " ms\n";
    if (r.exit_status() != 0) os << "\nCONTAINMENT FAILURE: a zero lies outside a region it must lie in\n";
    return os.str();
}

}  // namespace qzero
