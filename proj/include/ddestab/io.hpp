#pragma once

#include <string>
#include <vector>

#include "ddestab/verify.hpp"

namespace ddestab {

// %.17g, with "nan", "inf", "-inf" spelled out.
std::string format_double(double x);

// RFC-4180 quoting: fields containing a comma, quote or newline are quoted.
std::string csv_field(const std::string& s);
std::string csv_row(const std::vector<std::string>& fields);
std::string csv_row(const std::vector<double>& values);

std::string lemma_report_json(const LemmaReport& rep);
std::string fig2_curves_json(const std::vector<Fig2Curve>& curves);

// Creates parent directories as needed; throws std::runtime_error on failure.
void write_text_file(const std::string& path, const std::string& content);

// Reads "s,value" rows (optional header) into two columns.
void read_history_csv(const std::string& path, std::vector<double>& s, std::vector<double>& v);

}  // namespace ddestab
