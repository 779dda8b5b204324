// Copyright 2026 The crnt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "crnt/network.hpp"
#include "crnt/translation.hpp"

namespace crnt {

// Diagnostic with 1-based line and column (column 0 when not applicable).
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// .crn text: one reaction per line, "#" comments, "0" for the empty complex.
//   X1 + 2 X2 -> X3 ; k = 1.5
//   X1 <-> X2 ; kf = 1, kr = 2
// Weights are positive decimals or fractions p/q, read exactly.
// Duplicate reactions are merged by summing weights and reported in warnings.
ReactionNetwork parse_crn(std::string_view text, std::vector<std::string>* warnings = nullptr);

// Inverse of parse_crn: one "->" line per reaction in reaction order.
std::string print_crn(const ReactionNetwork& net);

// One complex per line, sharing the .crn complex syntax. Species are resolved
// against `species`, registering unknown names at the end.
std::vector<Complex> parse_complex_list(std::string_view text, std::vector<std::string>& species);

// Exact decimal when the denominator is 2^a 5^b, otherwise "p/q".
std::string format_rational(const Rational& r);
// Accepts decimals, exponents, and "p/q".
Rational parse_rational(std::string_view text);

GeneralizedNetwork parse_gcrn(std::string_view json_text);
std::string write_gcrn(const GeneralizedNetwork& gnet);

// h is required; h_K and lambda may be omitted and filled by infer_certificate.
TranslationCertificate parse_certificate(std::string_view json_text);
std::string write_certificate(const TranslationCertificate& cert);

enum class ReportFormat { kText, kJson };

std::string write_analysis(const ReactionNetwork& net, const NetworkAnalysis& a, ReportFormat format);
std::string write_analysis(const GeneralizedNetwork& gnet, const NetworkAnalysis& a, const KineticOrderAnalysis& k,
                           ReportFormat format);

std::string write_report(const ReactionNetwork& orig, const GeneralizedNetwork& trans,
                         const TranslationCertificate& cert, const ResolvabilityReport& report, ReportFormat format);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace crnt
