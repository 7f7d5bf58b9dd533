#include "qhankel/report.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qhankel/errors.hpp"

namespace qhankel {

namespace {

nlohmann::ordered_json ball_json(const BigFloat& b, int digits = 24) {
    nlohmann::ordered_json j;
    j["value"] = b.value_string(digits);
    j["err"] = b.err_string();
    return j;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        out += c;
    }
    out += "\"";
    return out;
}

std::string json_to_csv_scalar(const nlohmann::ordered_json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

// Flattens a document into key,value rows: the format-independent fallback
// for document kinds without a natural table.
void flatten(const nlohmann::ordered_json& j, const std::string& prefix,
             std::ostringstream& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else {
        out << csv_field(prefix) << "," << csv_field(json_to_csv_scalar(j))
            << "\n";
    }
}

std::string generic_csv(const nlohmann::ordered_json& doc) {
    std::ostringstream out;
    out << "key,value\n";
    flatten(doc, "", out);
    return out.str();
}

void suite_csv_rows(const nlohmann::ordered_json& suite,
                    std::ostringstream& out) {
    const std::string name = suite.at("suite").get<std::string>();
    for (const auto& c : suite.at("checks")) {
        out << csv_field(name) << ","
            << csv_field(c.at("name").get<std::string>()) << ","
            << (c.at("pass").get<bool>() ? "true" : "false") << ","
            << csv_field(c.at("detail").get<std::string>()) << "\n";
    }
}

std::string to_csv(const nlohmann::ordered_json& doc) {
    const std::string cmd = doc.at("command").get<std::string>();
    std::ostringstream out;
    if (cmd == "decay") {
        out << "n,log_ratio,err_bound\n";
        for (const auto& r : doc.at("rows")) {
            out << r.at("n").get<unsigned>() << ","
                << r.at("ratio").at("value").get<std::string>() << ","
                << r.at("ratio").at("err").get<std::string>() << "\n";
        }
        return out.str();
    }
    if (cmd == "constants") {
        out << "d,lambda_case,gamma,gamma_closed,agree\n";
        for (const auto& t : doc.at("thresholds")) {
            out << t.at("d").get<int>() << ","
                << t.at("lambda_case").get<std::string>() << ","
                << t.at("gamma").at("value").get<std::string>() << ","
                << t.at("gamma_closed").at("value").get<std::string>() << ","
                << (t.at("agree").get<bool>() ? "true" : "false") << "\n";
        }
        return out.str();
    }
    if (cmd == "verify") {
        out << "suite,check,pass,detail\n";
        if (doc.contains("suites")) {
            for (const auto& s : doc.at("suites")) suite_csv_rows(s, out);
        } else {
            suite_csv_rows(doc, out);
        }
        return out.str();
    }
    return generic_csv(doc);
}

void suite_text(const nlohmann::ordered_json& suite, std::ostringstream& out) {
    out << "suite " << suite.at("suite").get<std::string>() << ": "
        << (suite.at("pass").get<bool>() ? "PASS" : "FAIL") << " ("
        << suite.at("checks_passed").get<std::size_t>() << "/"
        << suite.at("checks_total").get<std::size_t>() << " checks)\n";
    out << "  config: " << suite.at("config").dump() << "\n";
    for (const auto& n : suite.at("notes"))
        out << "  note: " << n.get<std::string>() << "\n";
    for (const auto& c : suite.at("checks")) {
        if (c.at("pass").get<bool>()) continue;
        out << "  FAIL " << c.at("name").get<std::string>();
        const std::string d = c.at("detail").get<std::string>();
        if (!d.empty()) out << ": " << d;
        out << "\n";
    }
}

std::string to_text(const nlohmann::ordered_json& doc) {
    const std::string cmd = doc.at("command").get<std::string>();
    std::ostringstream out;
    if (cmd == "verify") {
        if (doc.contains("suites")) {
            for (const auto& s : doc.at("suites")) suite_text(s, out);
            out << "overall: " << (doc.at("pass").get<bool>() ? "PASS" : "FAIL")
                << "\n";
        } else {
            suite_text(doc, out);
        }
        return out.str();
    }
    if (cmd == "decay") {
        out << "decay: q=" << doc.at("config").at("q").get<std::string>()
            << " alpha=" << doc.at("config").at("alpha").get<std::string>()
            << " lambda=" << doc.at("config").at("lambda").get<std::string>()
            << " bits=" << doc.at("config").at("bits").get<long>() << "\n";
        out << "  n   sign   -log_|q||V_n| / n^3\n";
        for (const auto& r : doc.at("rows")) {
            out << "  " << r.at("n").get<unsigned>() << "   "
                << (r.at("sign").get<int>() > 0 ? "+" : "-") << "   "
                << r.at("ratio").at("value").get<std::string>() << " (err "
                << r.at("ratio").at("err").get<std::string>() << ")\n";
        }
        return out.str();
    }
    if (cmd == "constants") {
        out << "dilogarithm constant = "
            << doc.at("dilog_constant").at("value").get<std::string>() << "\n";
        out << "weighted-sum coefficient = "
            << doc.at("weighted_sum_coefficient").at("value").get<std::string>()
            << "\n";
        for (const auto& t : doc.at("thresholds")) {
            out << "threshold d=" << t.at("d").get<int>() << " lambda "
                << t.at("lambda_case").get<std::string>() << ": "
                << t.at("gamma").at("value").get<std::string>()
                << (t.at("agree").get<bool>() ? "  (closed form agrees)"
                                              : "  (closed form DISAGREES)")
                << "\n";
        }
        return out.str();
    }
    // generic: indented JSON is already line-oriented and readable
    out << doc.dump(2) << "\n";
    return out.str();
}

nlohmann::ordered_json checks_json(const SuiteReport& rep) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const Check& c : rep.checks)
        arr.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return arr;
}

}  // namespace

OutFormat parse_format(const std::string& s) {
    if (s == "json") return OutFormat::json;
    if (s == "csv") return OutFormat::csv;
    if (s == "text") return OutFormat::text;
    throw UsageError("unknown format '" + s + "' (expected json, csv or text)");
}

nlohmann::ordered_json suite_doc(const SuiteReport& rep) {
    nlohmann::ordered_json j;
    j["command"] = "verify";
    j["suite"] = rep.suite;
    j["config"] = rep.config;
    j["pass"] = rep.all_pass();
    j["checks_total"] = rep.checks.size();
    std::size_t passed = 0;
    for (const Check& c : rep.checks) passed += c.pass ? 1 : 0;
    j["checks_passed"] = passed;
    if (const Check* f = rep.first_failure())
        j["first_failure"] = {{"name", f->name}, {"detail", f->detail}};
    else
        j["first_failure"] = nullptr;
    j["notes"] = rep.notes;
    j["checks"] = checks_json(rep);
    if (!rep.data.is_null()) j["data"] = rep.data;
    return j;
}

nlohmann::ordered_json suites_doc(const std::vector<SuiteReport>& reps) {
    nlohmann::ordered_json j;
    j["command"] = "verify";
    j["suite"] = "all";
    bool pass = true;
    nlohmann::ordered_json ff = nullptr;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const SuiteReport& r : reps) {
        pass = pass && r.all_pass();
        if (ff.is_null())
            if (const Check* f = r.first_failure())
                ff = {{"suite", r.suite}, {"name", f->name},
                      {"detail", f->detail}};
        arr.push_back(suite_doc(r));
    }
    j["pass"] = pass;
    j["first_failure"] = ff;
    j["suites"] = arr;
    return j;
}

nlohmann::ordered_json constants_doc(const ConstantsReport& rep) {
    nlohmann::ordered_json j;
    j["command"] = "constants";
    j["config"] = {{"precision", static_cast<long>(rep.precision)}};
    j["dilog_constant"] = ball_json(rep.imLi2);
    j["A"] = {{"lambda_zero", ball_json(rep.A_lambda0)},
              {"general", ball_json(rep.A_general)}};
    j["B"] = {{"lambda_zero", ball_json(rep.B_lambda0)},
              {"general", ball_json(rep.B_general)}};
    j["C"] = ball_json(rep.C);
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const ThresholdEntry& t : rep.thresholds) {
        arr.push_back({{"d", t.d},
                       {"lambda_case", t.lambda_is_zero ? "zero" : "general"},
                       {"gamma", ball_json(t.gamma)},
                       {"gamma_closed", ball_json(t.gamma_closed)},
                       {"agree", t.agree}});
    }
    j["thresholds"] = arr;
    j["weighted_sum_coefficient"] = ball_json(rep.c_weighted);
    j["all_agree"] = rep.all_agree;
    return j;
}

nlohmann::ordered_json decay_doc(const DecayReport& rep) {
    nlohmann::ordered_json j;
    j["command"] = "decay";
    j["config"] = {{"q", to_string(rep.q)},
                   {"alpha", to_string(rep.alpha)},
                   {"lambda", to_string(rep.lambda)},
                   {"nmax", rep.n_max},
                   {"bits", static_cast<long>(rep.bits)}};
    j["lambda_is_zero"] = rep.lambda_is_zero;
    j["positivity_applies"] = rep.positivity_applies;
    j["reference"] = {{"A", ball_json(rep.ref_A)},
                      {"A_plus_B", ball_json(rep.ref_AB)}};
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const DecayRow& r : rep.rows) {
        rows.push_back({{"n", r.n},
                        {"sign", r.sign},
                        {"log_q_det", ball_json(r.log_q_det, 17)},
                        {"ratio", ball_json(r.ratio, 17)}});
    }
    j["rows"] = rows;
    return j;
}

nlohmann::ordered_json factored_doc(const FactoredDeterminant& f,
                                    const nlohmann::ordered_json& config) {
    nlohmann::ordered_json j;
    j["command"] = "factor";
    j["config"] = config;
    j["n"] = f.n;
    j["q_power"] = {{"found", f.e0_found}, {"guaranteed", f.e0_guaranteed}};
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& [l, found] : f.cyclo_exponents) {
        const auto it = f.guarantees.find(l);
        nlohmann::ordered_json row = {{"l", l}, {"found", found}};
        if (it != f.guarantees.end())
            row["guaranteed"] = it->second;
        else
            row["guaranteed"] = nullptr;
        arr.push_back(row);
    }
    j["cyclotomic"] = arr;
    j["cofactor_terms"] = f.cofactor.term_count();
    if (f.cofactor.term_count() <= 2000)
        j["cofactor"] = f.cofactor.to_json();
    else
        j["cofactor_omitted"] = "cofactor exceeds 2000 terms";
    return j;
}

nlohmann::ordered_json det_doc(const MultiPoly& det,
                               const nlohmann::ordered_json& config) {
    nlohmann::ordered_json j;
    j["command"] = "det";
    j["config"] = config;
    j["zero"] = det.is_zero();
    j["term_count"] = det.term_count();
    if (!det.is_zero()) {
        j["q_order"] = det.q_order();
        const auto d = det.degrees();
        j["degrees"] = {{"q", d[0]}, {"alpha", d[1]}, {"lambda", d[2]},
                        {"mu", d[3]}};
    }
    j["poly"] = det.to_json();
    return j;
}

nlohmann::ordered_json det_rational_doc(const Rational& det,
                                        const nlohmann::ordered_json& config) {
    nlohmann::ordered_json j;
    j["command"] = "det";
    j["config"] = config;
    j["zero"] = det == 0;
    j["value"] = to_string(det);
    return j;
}

nlohmann::ordered_json weighted_doc(const WeightedExponentSum& w) {
    nlohmann::ordered_json j;
    j["command"] = "asym";
    j["config"] = {{"n", w.n}};
    j["sum"] = w.sum.get_str();
    j["ratio"] = to_string(w.ratio);
    j["ratio_decimal"] =
        BigFloat::from_rational(w.ratio, 128).value_string(20);
    return j;
}

nlohmann::ordered_json sumel_doc(const SumelPartial& s) {
    nlohmann::ordered_json j;
    j["command"] = "sumel";
    j["config"] = {{"a", to_string(s.a)}, {"c", to_string(s.c)}, {"n", s.n}};
    j["sum"] = s.sum.get_str();
    j["prediction"] = ball_json(s.prediction);
    j["ratio"] = ball_json(s.ratio);
    return j;
}

std::string render(const nlohmann::ordered_json& doc, OutFormat format) {
    switch (format) {
        case OutFormat::json:
            return doc.dump(2) + "\n";
        case OutFormat::csv:
            return to_csv(doc);
        case OutFormat::text:
            return to_text(doc);
    }
    throw InternalError("unreachable format");
}

void write_output(const std::string& content, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << content << std::flush;
        return;
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw UsageError("cannot open output file " + tmp);
        out << content;
        if (!out.flush()) throw UsageError("cannot write output file " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw UsageError("cannot move output into place at " + path);
}

}  // namespace qhankel
