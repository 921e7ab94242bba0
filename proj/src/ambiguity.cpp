// Copyright 2026 The pdm-polar Authors
// SPDX-License-Identifier: Apache-2.0

#include "pdm/ambiguity.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <vector>

#include "pdm/error.hpp"

namespace pdm {

AmbiguitySet make_ambiguity(double alpha, double beta, double gamma) {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(gamma)) {
    throw Error(ErrorKind::ConstraintViolation,
                "ordering parameters must be finite");
  }
  const double residual = alpha + beta + gamma + 1.0;
  if (std::fabs(residual) > kVonRoosTolerance) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "alpha + beta + gamma = %.17g violates the von Roos "
                  "constraint (must be -1)",
                  alpha + beta + gamma);
    throw Error(ErrorKind::ConstraintViolation, buf);
  }
  return AmbiguitySet(alpha, beta, gamma);
}

AmbiguitySet named_ordering(OrderingName name) {
  const auto p = exact_parameters(name);
  return make_ambiguity(p[0].value(), p[1].value(), p[2].value());
}

std::string_view token(OrderingName name) {
  switch (name) {
    case OrderingName::GoraWilliams: return "gora-williams";
    case OrderingName::BenDanielDuke: return "bendaniel-duke";
    case OrderingName::ZhuKroemer: return "zhu-kroemer";
    case OrderingName::LiKuhn: return "li-kuhn";
    case OrderingName::MustafaMazharimousavi: return "mustafa-mazharimousavi";
  }
  return "";
}

namespace {

double parse_real(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::ConfigError,
                "malformed number in ordering: '" + std::string(s) + "'");
  }
  return value;
}

}  // namespace

AmbiguitySet parse_ordering(std::string_view text) {
  for (const auto name : kNamedOrderings) {
    if (text == token(name)) return named_ordering(name);
  }
  constexpr std::string_view prefix = "custom:";
  if (text.substr(0, prefix.size()) != prefix) {
    throw Error(ErrorKind::ConfigError,
                "unknown ordering '" + std::string(text) + "'");
  }
  text.remove_prefix(prefix.size());
  std::vector<double> values;
  while (true) {
    const auto comma = text.find(',');
    values.push_back(parse_real(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (values.size() != 3) {
    throw Error(ErrorKind::ConfigError,
                "custom ordering needs exactly three values ALPHA,BETA,GAMMA");
  }
  return make_ambiguity(values[0], values[1], values[2]);
}

std::optional<OrderingName> match_named(const AmbiguitySet& a) {
  for (const auto name : kNamedOrderings) {
    if (named_ordering(name) == a) return name;
  }
  return std::nullopt;
}

std::string ordering_token(const AmbiguitySet& a) {
  if (const auto name = match_named(a)) return std::string(token(*name));
  char buf[96];
  std::snprintf(buf, sizeof buf, "custom:%.17g,%.17g,%.17g", a.alpha(),
                a.beta(), a.gamma());
  return buf;
}

bool check_constraint27(const AmbiguitySet& a) {
  const double v = constraint27_value(a.alpha(), a.beta(), a.gamma());
  return std::fabs(v - 0.625) <= 1e-12;
}

}  // namespace pdm
