#include "pnsqkd/curves.hpp"

#include "pnsqkd/anchors.hpp"
#include "pnsqkd/attacks.hpp"
#include "pnsqkd/cloning.hpp"
#include "pnsqkd/keyrate.hpp"
#include "pnsqkd/photonics.hpp"
#include "pnsqkd/qmath.hpp"

#include "json.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <set>
#include <future>
#include <stdexcept>
#include <string_view>
#include <thread>

namespace pnsqkd {

namespace {

double parse_double(std::string_view s, const std::string& what) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || p != end || !std::isfinite(v)) throw std::invalid_argument("bad number '" + std::string(s) + "' in " + what);
    return v;
}

}  // namespace

Grid Grid::parse(const std::string& text) {
    std::vector<std::string_view> parts;
    std::string_view rest(text);
    for (;;) {
        const auto pos = rest.find(':');
        parts.push_back(rest.substr(0, pos));
        if (pos == std::string_view::npos) break;
        rest.remove_prefix(pos + 1);
    }
    if (parts.size() == 1) {
        const double v = parse_double(parts[0], "grid");
        return {v, v, 1.0};
    }
    if (parts.size() == 2) parts.push_back("1");
    if (parts.size() != 3) throw std::invalid_argument("grid must be min:max:step, got '" + text + "'");
    Grid g{parse_double(parts[0], "grid"), parse_double(parts[1], "grid"), parse_double(parts[2], "grid")};
    if (!(g.min < g.max)) throw std::invalid_argument("grid needs min < max, got '" + text + "'");
    if (!(g.step > 0.0)) throw std::invalid_argument("grid needs step > 0, got '" + text + "'");
    if ((g.max - g.min) / g.step > 1e6) throw std::invalid_argument("grid has more than a million points");
    return g;
}

std::vector<double> Grid::points() const {
    const long n = static_cast<long>(std::floor((max - min) / step + 1e-9));
    std::vector<double> out;
    for (long k = 0; k <= n; ++k) out.push_back(min + k * step);
    return out;
}

namespace {

const std::string kKm = "distance_km";

struct Settings {
    SourceChannelModel model;
    double eta;
    double distance_km;
    std::vector<double> d;      // distances [km]
    std::vector<double> gamma;  // machine parameter
    std::vector<int> nb;
};

std::vector<int> nb_values(const Grid& g) {
    std::vector<int> out;
    for (double v : g.points()) {
        if (std::abs(v - std::round(v)) > 1e-9) throw std::invalid_argument("--nb values must be integers");
        const int n = static_cast<int>(std::lround(v));
        if (n < 2 || n > 8) throw std::invalid_argument("--nb values must lie in 2..8");
        out.push_back(n);
    }
    return out;
}

std::string defaults_text(double mu, const std::string& d, const std::string& extra) {
    std::string s = "--mu " + format_number(mu);
    if (!d.empty()) s += " --d " + d;
    if (!extra.empty()) s += " " + extra;
    return s;
}

// `accepts` lists the optional flags a curve reads; anything else set by the caller is rejected.
Settings resolve(const CurveOptions& o, std::string_view accepts, double mu, const std::string& d, const std::string& gamma,
                 const std::string& nb) {
    std::set<std::string, std::less<>> known;
    for (std::size_t pos = 0; pos < accepts.size();) {
        const auto end = std::min(accepts.find(' ', pos), accepts.size());
        if (end > pos) known.emplace(accepts.substr(pos, end - pos));
        pos = end + 1;
    }
    auto refuse = [&](bool set, std::string_view flag) {
        if (set && !known.count(flag)) throw std::invalid_argument("--" + std::string(flag) + " is not used by this curve");
    };
    refuse(o.mu.has_value(), "mu");
    refuse(o.alpha.has_value(), "alpha");
    refuse(o.eta_det.has_value(), "eta-det");
    refuse(o.p_d.has_value(), "pd");
    refuse(o.qber_opt.has_value(), "qber-opt");
    refuse(o.eta.has_value(), "eta");
    refuse(o.distance_km.has_value(), "distance");
    refuse(o.nb.has_value(), "nb");
    refuse(o.gamma.has_value(), "gamma");
    refuse(o.d.has_value(), "d");

    Settings s;
    s.model.mu = o.mu.value_or(mu);
    s.model.alpha = o.alpha.value_or(0.25);
    s.model.eta_det = o.eta_det.value_or(0.1);
    s.model.p_d = o.p_d.value_or(1e-5);
    s.model.qber_opt = o.qber_opt.value_or(0.01);
    s.model.validate();
    s.eta = o.eta.value_or(kPi / 3);
    if (!(s.eta > 0.0 && s.eta <= kPi / 2)) throw std::invalid_argument("--eta must lie in (0, pi/2]");
    s.distance_km = o.distance_km.value_or(67.0);
    if (!(s.distance_km >= 0.0)) throw std::invalid_argument("--distance must be non-negative");
    if (!d.empty()) s.d = (o.d ? *o.d : Grid::parse(d)).points();
    for (double km : s.d)
        if (km < 0.0) throw std::invalid_argument("--d distances must be non-negative");
    if (!gamma.empty()) s.gamma = (o.gamma ? *o.gamma : Grid::parse(gamma)).points();
    for (double g : s.gamma)
        if (g < 0.0 || g > kPi / 2 + 1e-12) throw std::invalid_argument("--gamma values must lie in [0, pi/2]");
    for (double& g : s.gamma) g = std::min(g, kPi / 2);
    if (!nb.empty()) s.nb = nb_values(o.nb ? *o.nb : Grid::parse(nb));
    return s;
}

// Evaluates rows in parallel and keeps them in input order.
template <class T>
std::vector<std::vector<double>> parallel_rows(const std::vector<T>& xs, const std::function<std::vector<double>(T)>& f) {
    std::vector<std::future<std::vector<double>>> jobs;
    jobs.reserve(xs.size());
    for (const T& x : xs) jobs.push_back(std::async(std::launch::async, f, x));
    std::vector<std::vector<double>> rows;
    rows.reserve(xs.size());
    for (auto& j : jobs) rows.push_back(j.get());
    return rows;
}

// std::async per point would spawn thousands of threads on long grids
template <class T>
std::vector<std::vector<double>> chunked_rows(const std::vector<T>& xs, const std::function<std::vector<double>(T)>& f) {
    const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t chunk = (xs.size() + workers - 1) / workers;
    std::vector<std::future<std::vector<std::vector<double>>>> jobs;
    for (std::size_t lo = 0; lo < xs.size(); lo += chunk) {
        const std::size_t hi = std::min(xs.size(), lo + chunk);
        jobs.push_back(std::async(std::launch::async, [&xs, &f, lo, hi] {
            std::vector<std::vector<double>> part;
            for (std::size_t k = lo; k < hi; ++k) part.push_back(f(xs[k]));
            return part;
        }));
    }
    std::vector<std::vector<double>> rows;
    for (auto& j : jobs)
        for (auto& r : j.get()) rows.push_back(std::move(r));
    return rows;
}

void put_model(Table& t, const SourceChannelModel& m) {
    t.meta["mu"] = format_number(m.mu);
    t.meta["alpha"] = format_number(m.alpha);
}

void put_detector(Table& t, const SourceChannelModel& m) {
    t.meta["eta_det"] = format_number(m.eta_det);
    t.meta["p_d"] = format_number(m.p_d);
    t.meta["qber_opt"] = format_number(m.qber_opt);
}

Table curve_pns_bb84(const CurveOptions& o) {
    const Settings s = resolve(o, "mu alpha d", 0.1, "0:120:1", "", "");
    Table t{{kKm, "delta_db", "q", "i_eve"}, {}, {}};
    put_model(t, s.model);
    t.meta["critical_delta_db"] = format_number(bb84_critical_attenuation(s.model.mu));
    t.rows = chunked_rows<double>(s.d, [&](double km) {
        const double db = distance_to_attenuation(km, s.model.alpha);
        const auto p = bb84_pns(s.model.mu, db, s.model.alpha);
        return std::vector<double>{km, db, p.q_passed, p.i_eve};
    });
    return t;
}

Table curve_pns_42(const CurveOptions& o) {
    const Settings s = resolve(o, "alpha eta d", 0.1, "0:120:1", "", "");
    Table t{{kKm, "delta_db", "i_eve_b92", "q_b92", "i_eve_42", "q_42"}, {}, {}};
    t.meta["alpha"] = format_number(s.model.alpha);
    t.meta["eta"] = format_number(s.eta);
    t.meta["mu_b92"] = format_number(0.1);
    t.meta["mu_42"] = format_number(fourtwo_mu(s.eta));
    t.meta["critical_delta_db_b92"] = format_number(b92_weakpulse_critical_attenuation(s.eta));
    t.meta["critical_delta_db_42"] = format_number(fourtwo_critical_attenuation(s.eta));
    t.rows = chunked_rows<double>(s.d, [&](double km) {
        const double db = distance_to_attenuation(km, s.model.alpha);
        const auto b = b92_weakpulse(s.eta, db, s.model.alpha);
        const auto f = fourtwo_pns(s.eta, db, s.model.alpha);
        return std::vector<double>{km, db, b.i_eve, b.q_passed, f.i_eve, f.q_passed};
    });
    return t;
}

Table curve_figiepr(const CurveOptions& o) {
    const Settings s = resolve(o, "mu alpha d", 0.2, "0:120:1", "", "");
    Table t{{kKm, "delta_db", "i_eve", "irud_fraction", "q", "i_eve_storing", "i_eve_irud"}, {}, {}};
    put_model(t, s.model);
    t.rows = chunked_rows<double>(s.d, [&](double km) {
        const double db = distance_to_attenuation(km, s.model.alpha);
        const auto p = fourstate_combined_point(s.model.mu, db, s.model.alpha);
        return std::vector<double>{km,          db, p.i_eve, p.irud_fraction, p.q_passed, fourstate_storing_only(s.model.mu, db),
                                   fourstate_irud_only(s.model.mu, db)};
    });
    return t;
}

Table curve_muopt(const CurveOptions& o) {
    const Settings s = resolve(o, "alpha d", 0.2, "0:140:2", "", "");
    Table t{{kKm, "delta_db", "mu_opt", "rate", "i_eve", "at_cap"}, {}, {}};
    t.meta["alpha"] = format_number(s.model.alpha);
    t.meta["mu_range"] = format_number(kMuMin) + ":" + format_number(kMuCap);
    t.meta["at_cap_note"] = "mu capped; the intercept-resend bound at short distance is not modelled";
    t.rows = chunked_rows<double>(s.d, [&](double km) {
        const double db = distance_to_attenuation(km, s.model.alpha);
        const auto m = optimal_mu(db);
        return std::vector<double>{km, db, m.mu, m.rate, m.i_eve, m.at_cap ? 1.0 : 0.0};
    });
    return t;
}

std::vector<double> sifted_cells(const SiftedPoint& p) {
    return {p.disturbance, p.qber_sifted, p.i_ab, p.i_ae, p.i_be, p.i_eve};
}

std::vector<std::string> sifted_columns(const std::string& tag) {
    std::vector<std::string> c;
    for (const char* k : {"d_", "qber_", "i_ab_", "i_ae_", "i_be_", "i_eve_"}) c.push_back(k + tag);
    return c;
}

Table curve_ieclon12(const CurveOptions& o) {
    const Settings s = resolve(o, "gamma", 0.1, "", "0:1.57079632679:0.0157079632679", "");
    Table t{{"gamma", "f_cerf"}, {}, {}};
    for (const auto& tag : {"ng", "cerf"})
        for (auto& c : sifted_columns(tag)) t.columns.push_back(c);
    t.rows = chunked_rows<double>(s.gamma, [](double g) {
        std::vector<double> row{g, (1.0 + std::cos(g)) / 2.0};
        for (auto f : {Family12::NG, Family12::Cerf})
            for (double v : sifted_cells(sifted_point(machine12(f, g)))) row.push_back(v);
        return row;
    });
    const auto cn = crossing12(Family12::NG), cc = crossing12(Family12::Cerf);
    t.meta["crossing_qber_ng"] = format_number(cn.qber_sifted);
    t.meta["crossing_qber_cerf"] = format_number(cc.qber_sifted);
    t.meta["crossing_d_ng"] = format_number(cn.disturbance);
    t.meta["crossing_d_cerf"] = format_number(cc.disturbance);
    return t;
}

Table curve_ieclon23(const CurveOptions& o) {
    const Settings s = resolve(o, "mu alpha distance gamma", 0.2, "", "0:1.57079632679:0.0157079632679", "");
    const double db = distance_to_attenuation(s.distance_km, s.model.alpha);
    // throws InfeasibleModel before any work
    pns_cloning_attack(Family23::NGs, s.model.mu, db, {});
    Table t{{"gamma", "x_cerf"}, {}, {}};
    for (const auto& tag : {"ngs", "cerf"})
        for (auto& c : sifted_columns(tag)) t.columns.push_back(c);
    put_model(t, s.model);
    t.meta["distance_km"] = format_number(s.distance_km);
    t.meta["delta_db"] = format_number(db);
    t.meta["min_delta_db"] = format_number(pns_cloning_min_attenuation(s.model.mu));
    t.rows = chunked_rows<double>(s.gamma, [&](double g) {
        std::vector<double> row{g, std::sin(g) / std::sqrt(8.0)};
        for (auto f : {Family23::NGs, Family23::Cerf})
            for (double v : sifted_cells(pns_cloning_attack(f, s.model.mu, db, std::vector<double>{g}).front())) row.push_back(v);
        return row;
    });
    const auto cn = crossing23(Family23::NGs), cc = crossing23(Family23::Cerf);
    t.meta["crossing_qber_ngs"] = format_number(cn.qber_sifted);
    t.meta["crossing_qber_cerf"] = format_number(cc.qber_sifted);
    return t;
}

Table curve_dcrit(const CurveOptions& o) {
    const Settings s = resolve(o, "alpha eta-det pd qber-opt nb", 0.1, "", "", "2:8:1");
    Table t{{"n_b", "mu", "delta1_db", "delta2_db", "dist1_km", "dist2_km"}, {}, {}};
    t.meta["alpha"] = format_number(s.model.alpha);
    put_detector(t, s.model);
    t.rows = parallel_rows<int>(s.nb, [&](int nb) {
        const auto r = nb_security_summary(nb, s.model);
        return std::vector<double>{double(nb), r.mu, r.delta1_db, r.delta2_db, r.dist1_km, r.dist2_km};
    });
    return t;
}

Table curve_stattnb(const CurveOptions& o) {
    const Settings s = resolve(o, "alpha eta-det pd qber-opt nb d", 0.1, "0:250:5", "", "2:5:1");
    Table t{{"n_b", kKm, "delta_db", "i_ab", "i_eve", "passed"}, {}, {}};
    t.meta["alpha"] = format_number(s.model.alpha);
    put_detector(t, s.model);
    std::vector<double> dbs;
    for (double km : s.d) dbs.push_back(distance_to_attenuation(km, s.model.alpha));
    const auto blocks = parallel_rows<int>(s.nb, [&](int nb) {
        // flattened: one block of rows per n_b
        std::vector<double> flat;
        for (const auto& p : nb_storing_curve(nb, s.model, dbs).points)
            for (double v : {double(nb), p.distance_km, p.delta_db, p.i_ab, p.i_eve, p.q_passed}) flat.push_back(v);
        return flat;
    });
    for (const auto& b : blocks)
        for (std::size_t k = 0; k < b.size(); k += 6) t.rows.emplace_back(b.begin() + k, b.begin() + k + 6);
    for (int nb : s.nb) t.meta["crossing_km_nb" + std::to_string(nb)] = format_number(nb_storing_crossing(nb, s.model) / s.model.alpha);
    return t;
}

Table curve_clonfid(const CurveOptions& o) {
    const Settings s = resolve(o, "gamma", 0.1, "", "0:1.57079632679:0.0157079632679", "");
    Table t{{"gamma", "f1_ng23", "f3_ng23", "x", "v", "f1_cerf23", "f3_cerf23"}, {}, {}};
    t.rows = chunked_rows<double>(s.gamma, [](double g) {
        const auto ng = clone_reduced_states(make_ng23(g), kets::plus_x());
        const double x = std::sin(g) / std::sqrt(8.0);
        const auto ce = clone_reduced_states(make_cerf23(x), kets::plus_x());
        return std::vector<double>{g, ng[0].fidelity, ng[2].fidelity, x, std::sqrt(std::max(0.0, 1 - 8 * x * x)), ce[0].fidelity,
                                   ce[2].fidelity};
    });
    return t;
}

Table curve_strongpulse(const CurveOptions& o) {
    const Settings s = resolve(o, "mu alpha d", 0.025, "0:200:5", "", "");
    if (!(s.model.mu < 1.0)) throw std::invalid_argument("strongpulse needs --mu below 1");
    Table t{{kKm, "delta_db", "mu_prime", "t", "overlap", "p_e", "i_eve"}, {}, {}};
    put_model(t, s.model);
    t.meta["asymptotic_i_eve"] = format_number(strongpulse_asymptotic_information(s.model.mu));
    t.rows = chunked_rows<double>(s.d, [&](double km) {
        const double db = distance_to_attenuation(km, s.model.alpha);
        const auto p = strongpulse_b92(db, s.model.mu);
        return std::vector<double>{km, db, p.mu_prime, p.t, p.overlap, p.p_e, p.i_eve};
    });
    return t;
}

struct Entry {
    CurveInfo info;
    Table (*run)(const CurveOptions&);
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> e{
        {{"pns-bb84", "BB84 PNS attack versus distance", "distance_km,delta_db,q,i_eve", defaults_text(0.1, "0:120:1", "")},
         curve_pns_bb84},
        {{"pns-42", "B92 weak-pulse and 4+2 PNS attacks", "distance_km,delta_db,i_eve_b92,q_b92,i_eve_42,q_42",
          "--eta 1.0471975512 --d 0:120:1"},
         curve_pns_42},
        {{"figiepr", "four-state protocol, combined storing/IRUD attack",
          "distance_km,delta_db,i_eve,irud_fraction,q,i_eve_storing,i_eve_irud", defaults_text(0.2, "0:120:1", "")},
         curve_figiepr},
        {{"muopt", "optimal mean photon number for the four-state protocol", "distance_km,delta_db,mu_opt,rate,i_eve,at_cap",
          "--d 0:140:2"},
         curve_muopt},
        {{"ieclon12", "sifted 1->2 cloning attack, NG and Cerf machines",
          "gamma,f_cerf,{d,qber,i_ab,i_ae,i_be,i_eve}_{ng,cerf}", "--gamma 0:1.57079632679:0.0157079632679"},
         curve_ieclon12},
        {{"ieclon23", "PNS plus 2->3 cloning attack, symmetrized NG and Cerf machines",
          "gamma,x_cerf,{d,qber,i_ab,i_ae,i_be,i_eve}_{ngs,cerf}", defaults_text(0.2, "", "--distance 67 --gamma 0:1.57079632679:0.0157079632679")},
         curve_ieclon23},
        {{"dcrit", "critical distances versus number of bases", "n_b,mu,delta1_db,delta2_db,dist1_km,dist2_km",
          "--nb 2:8 --eta-det 0.1 --pd 1e-05 --qber-opt 0.01"},
         curve_dcrit},
        {{"stattnb", "storing attack and I_AB versus distance per number of bases",
          "n_b,distance_km,delta_db,i_ab,i_eve,passed", "--nb 2:5 --d 0:250:5 --eta-det 0.1 --pd 1e-05 --qber-opt 0.01"},
         curve_stattnb},
        {{"clonfid", "2->3 clone fidelities, NG versus Cerf", "gamma,f1_ng23,f3_ng23,x,v,f1_cerf23,f3_cerf23",
          "--gamma 0:1.57079632679:0.0157079632679 (x = sin(gamma)/sqrt(8))"},
         curve_clonfid},
        {{"strongpulse", "B92 with a strong reference pulse", "distance_km,delta_db,mu_prime,t,overlap,p_e,i_eve",
          defaults_text(0.025, "0:200:5", "")},
         curve_strongpulse},
    };
    return e;
}

nlohmann::ordered_json rounded(double v) {
    // same digits as the CSV
    return std::stod(format_number(v));
}

}  // namespace

const std::vector<CurveInfo>& curve_catalog() {
    static const std::vector<CurveInfo> c = [] {
        std::vector<CurveInfo> out;
        for (const auto& e : entries()) out.push_back(e.info);
        return out;
    }();
    return c;
}

Table run_curve(const std::string& id, const CurveOptions& opt) {
    for (const auto& e : entries())
        if (e.info.id == id) return e.run(opt);
    throw std::invalid_argument("unknown curve '" + id + "'");
}

Table geneva_lausanne_table() {
    const auto c = geneva_lausanne_report();
    Table t{{"mu", kKm, "delta_db", "qber", "qber_dark", "qber_optical", "i_ab", "i_eve_pns", "min_delta_db",
             "i_eve_cloning_optical", "i_eve_cloning_all", "secure_optical_only", "secure_full_error"},
            {},
            {}};
    t.rows.push_back({c.mu, c.distance_km, c.delta_db, c.qber, c.qber_dark, c.qber_optical, c.i_ab, c.i_eve_pns, c.min_delta_db,
                      c.i_eve_cloning_opt, c.i_eve_cloning_all, c.secure_optical_only ? 1.0 : 0.0, c.secure_full_error ? 1.0 : 0.0});
    return t;
}

std::string format_number(double v) {
    if (v == 0.0) return "0";  // drops the sign of -0
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    return std::string(buf, r.ptr);
}

void write_csv(std::ostream& os, const Table& t) {
    for (std::size_t k = 0; k < t.columns.size(); ++k) os << (k ? "," : "") << t.columns[k];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << format_number(row[k]);
        os << '\n';
    }
}

void write_json(std::ostream& os, const std::string& name, const Table& t) {
    nlohmann::ordered_json j;
    j["curve"] = name;
    j["meta"] = t.meta;
    j["columns"] = t.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        auto r = nlohmann::ordered_json::array();
        for (double v : row) r.push_back(rounded(v));
        rows.push_back(r);
    }
    j["rows"] = rows;
    os << j.dump(2) << '\n';
}

bool write_validation(std::ostream& os) {
    nlohmann::ordered_json j;
    bool all = true;
    int total = 0, passed = 0;
    auto check_json = [&](const Check& c) {
        ++total;
        passed += c.pass;
        nlohmann::ordered_json x;
        x["name"] = c.name;
        x["measured"] = rounded(c.measured);
        x["expected"] = rounded(c.expected);
        x["tolerance"] = rounded(c.tolerance);
        x["pass"] = c.pass;
        if (!c.note.empty()) x["note"] = c.note;
        return x;
    };
    auto crit = nlohmann::ordered_json::array();
    for (const auto& c : acceptance_criteria()) {
        nlohmann::ordered_json x;
        x["id"] = c.id;
        x["title"] = c.title;
        x["pass"] = c.pass();
        all = all && c.pass();
        auto checks = nlohmann::ordered_json::array();
        for (const auto& k : c.checks) checks.push_back(check_json(k));
        x["checks"] = checks;
        crit.push_back(x);
    }
    auto inv = nlohmann::ordered_json::array();
    for (const auto& k : invariant_checks()) {
        all = all && k.pass;
        inv.push_back(check_json(k));
    }
    j["pass"] = all;
    j["checks_total"] = total;
    j["checks_passed"] = passed;
    j["criteria"] = crit;
    j["invariants"] = inv;
    os << j.dump(2) << '\n';
    return all;
}

}  // namespace pnsqkd
