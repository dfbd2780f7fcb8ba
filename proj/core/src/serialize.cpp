#include "eahdim/serialize.hpp"

#include <cstdio>

namespace eahdim {

std::string fmt_g12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::string case_tag_name(CaseTag tag) {
    switch (tag) {
        case CaseTag::Range01: return "Range01";
        case CaseTag::Empty: return "Empty";
        case CaseTag::Countable: return "Countable";
    }
    return "?";
}

std::string semantics_name(Semantics s) {
    return s == Semantics::Optimistic ? "optimistic" : "pessimistic";
}

namespace {

std::string int_array(const std::vector<std::int64_t>& xs) {
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(xs[i]);
    }
    out += "]";
    return out;
}

std::string word_array(const Word& w) {
    std::string out = "[";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(w[i]);
    }
    out += "]";
    return out;
}

} // namespace

std::string dimension_report_json(const DimensionReport& rep) {
    std::string out = "{\n";
    out += "  \"dim_lambda\": " + fmt_g12(rep.dim_lambda) + ",\n";
    out += "  \"theta_grid\": [";
    for (std::size_t i = 0; i < rep.theta_grid.size(); ++i) {
        if (i) out += ",";
        const auto& p = rep.theta_grid[i];
        out += "[" + fmt_g12(p.theta) + "," + fmt_g12(p.s_plus) + "," + fmt_g12(p.s_minus) + "]";
    }
    out += "],\n";
    out += "  \"s_hat_plus\": " + fmt_g12(rep.s_hat_plus) + ",\n";
    out += "  \"s_hat_minus\": " + fmt_g12(rep.s_hat_minus) + ",\n";
    out += "  \"omega_plus_bound\": " + fmt_g12(rep.omega_plus_bound) + ",\n";
    out += "  \"omega_minus_bound\": " + fmt_g12(rep.omega_minus_bound) + ",\n";
    out += "  \"case\": \"" + case_tag_name(rep.case_tag) + "\",\n";
    out += std::string("  \"condition5_holds\": ") + (rep.condition5_holds ? "true" : "false") + ",\n";
    out += "  \"theta_star_plus\": " + fmt_g12(rep.theta_star_plus) + ",\n";
    out += "  \"theta_star_minus\": " + fmt_g12(rep.theta_star_minus) + "\n";
    out += "}\n";
    return out;
}

std::string sweep_csv_header() {
    return "v,dim_lambda,s_hat_plus,s_hat_minus,omega_plus,omega_minus,theta_star,condition5\n";
}

std::string sweep_csv_row(double v, const DimensionReport& rep) {
    std::string out;
    out += fmt_g12(v) + "," + fmt_g12(rep.dim_lambda) + "," + fmt_g12(rep.s_hat_plus) + "," +
           fmt_g12(rep.s_hat_minus) + "," + fmt_g12(rep.omega_plus_bound) + "," +
           fmt_g12(rep.omega_minus_bound) + "," + fmt_g12(rep.theta_star_plus) + "," +
           (rep.condition5_holds ? "1" : "0") + "\n";
    return out;
}

std::string rate_estimate_json(const RateEstimate& r) {
    std::string out = "{\n";
    out += "  \"v_e_hat\": " + fmt_g12(r.v_e_hat) + ",\n";
    out += "  \"v_s_hat\": " + fmt_g12(r.v_s_hat) + ",\n";
    out += "  \"depth\": " + std::to_string(r.depth) + ",\n";
    out += "  \"tail_window\": " + std::to_string(r.tail_window) + "\n";
    out += "}\n";
    return out;
}

std::string rigidity_check_json(const RigidityCheck& r) {
    std::string out = "{\n";
    out += std::string("  \"ok\": ") + (r.ok ? "true" : "false") + ",\n";
    if (r.first_violation) {
        out += "  \"first_violation\": {\"n\": " + std::to_string(r.first_violation->n) +
               ", \"m\": " + std::to_string(r.first_violation->m) +
               ", \"j\": " + std::to_string(r.first_violation->j) + "}\n";
    } else {
        out += "  \"first_violation\": null\n";
    }
    out += "}\n";
    return out;
}

std::string witness_json(const WitnessConstruction& lc, bool include_witness) {
    std::string out = "{\n";
    out += "  \"theta\": " + fmt_g12(lc.theta) + ",\n";
    out += "  \"v\": " + fmt_g12(lc.v) + ",\n";
    out += "  \"a\": " + fmt_g12(lc.a) + ",\n";
    out += "  \"n_k\": " + int_array(lc.n_k) + ",\n";
    out += "  \"m_k\": " + int_array(lc.m_k) + ",\n";
    out += "  \"depth\": " + std::to_string(lc.depth) + ",\n";
    out += "  \"witness_prefix\": " + (include_witness ? word_array(lc.witness_prefix) : "null") +
           "\n";
    out += "}\n";
    return out;
}

std::string count_results_csv(const std::vector<CountResult>& rows) {
    std::string out = "n,count,log_rate,semantics\n";
    for (const auto& r : rows) {
        out += std::to_string(r.n) + "," + std::to_string(r.count) + "," + fmt_g12(r.log_rate) +
               "," + semantics_name(r.semantics) + "\n";
    }
    return out;
}

std::string count_results_json(const std::vector<CountResult>& rows) {
    std::string out = "[\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        out += "  {\"n\": " + std::to_string(r.n) + ", \"count\": " + std::to_string(r.count) +
               ", \"log_rate\": " + fmt_g12(r.log_rate) + ", \"semantics\": \"" +
               semantics_name(r.semantics) + "\"}";
        out += (i + 1 < rows.size()) ? ",\n" : "\n";
    }
    out += "]\n";
    return out;
}

std::string gap_report_json(const GapBoundReport& rep) {
    std::string out = "{\n";
    out += "  \"theta\": " + fmt_g12(rep.theta) + ",\n";
    out += "  \"v\": " + fmt_g12(rep.v) + ",\n";
    out += "  \"s_plus\": " + fmt_g12(rep.s_plus) + ",\n";
    out += "  \"delta_hat\": " + fmt_g12(rep.delta_hat) + ",\n";
    out += "  \"C\": " + fmt_g12(rep.C) + ",\n";
    out += "  \"dim_lambda\": " + fmt_g12(rep.dim_lambda) + ",\n";
    out += "  \"entries\": [\n";
    for (std::size_t i = 0; i < rep.entries.size(); ++i) {
        const auto& e = rep.entries[i];
        out += "    {\"delta\": " + fmt_g12(e.delta) + ", \"s_bar\": " + fmt_g12(e.s_bar) +
               ", \"gap\": " + fmt_g12(e.gap) + ", \"bound\": " + fmt_g12(e.bound) +
               ", \"pass\": " + (e.pass ? "true" : "false") + "}";
        out += (i + 1 < rep.entries.size()) ? ",\n" : "\n";
    }
    out += "  ],\n";
    out += std::string("  \"all_pass\": ") + (rep.all_pass ? "true" : "false") + "\n";
    out += "}\n";
    return out;
}

std::string pressure_value_json(double s, double pressure, double derivative) {
    std::string out = "{\n";
    out += "  \"s\": " + fmt_g12(s) + ",\n";
    out += "  \"pressure\": " + fmt_g12(pressure) + ",\n";
    out += "  \"derivative\": " + fmt_g12(derivative) + "\n";
    out += "}\n";
    return out;
}

std::string pressure_bracket_json(double s, std::int64_t n, double lower, double upper) {
    std::string out = "{\n";
    out += "  \"s\": " + fmt_g12(s) + ",\n";
    out += "  \"n\": " + std::to_string(n) + ",\n";
    out += "  \"lower\": " + fmt_g12(lower) + ",\n";
    out += "  \"upper\": " + fmt_g12(upper) + "\n";
    out += "}\n";
    return out;
}

} // namespace eahdim
