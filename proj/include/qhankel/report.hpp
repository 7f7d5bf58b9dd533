#pragma once

#include <string>

#include <json.hpp>

#include "qhankel/asym.hpp"
#include "qhankel/hankel.hpp"
#include "qhankel/verify.hpp"

namespace qhankel {

enum class OutFormat { json, csv, text };
// "json" / "csv" / "text"; anything else is a UsageError.
OutFormat parse_format(const std::string& s);

// Every builder returns a complete document (command, config echo, payload);
// rendering any document with the same inputs is byte-deterministic.
nlohmann::ordered_json suite_doc(const SuiteReport& rep);
nlohmann::ordered_json suites_doc(const std::vector<SuiteReport>& reps);
nlohmann::ordered_json constants_doc(const ConstantsReport& rep);
nlohmann::ordered_json decay_doc(const DecayReport& rep);
nlohmann::ordered_json factored_doc(const FactoredDeterminant& f,
                                    const nlohmann::ordered_json& config);
nlohmann::ordered_json det_doc(const MultiPoly& det,
                               const nlohmann::ordered_json& config);
nlohmann::ordered_json det_rational_doc(const Rational& det,
                                        const nlohmann::ordered_json& config);
nlohmann::ordered_json weighted_doc(const WeightedExponentSum& w);
nlohmann::ordered_json sumel_doc(const SumelPartial& s);

// Renders a document in the requested format.  CSV uses a fixed header row
// per document kind; text is a line-oriented human-readable digest.  All
// three are deterministic functions of the document.
std::string render(const nlohmann::ordered_json& doc, OutFormat format);

// Writes to the path atomically (temp file + rename), or to standard output
// when path is empty or "-".
void write_output(const std::string& content, const std::string& path);

}  // namespace qhankel
