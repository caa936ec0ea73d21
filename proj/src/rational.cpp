// Copyright 2026 The robagg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "robagg/rational.hpp"

#include <cctype>
#include <cstdlib>

#include "robagg/error.hpp"

namespace robagg {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::ordering_violation: return "OrderingViolation";
    case Errc::prior_out_of_range: return "PriorOutOfRange";
    case Errc::degenerate_scenario: return "DegenerateScenario";
    case Errc::one_sided_marginal: return "OneSidedMarginal";
    case Errc::prior_mismatch: return "PriorMismatch";
    case Errc::sign_violation: return "SignViolation";
    case Errc::mixture_violation: return "MixtureViolation";
    case Errc::zero_denominator: return "ZeroDenominator";
    case Errc::size_mismatch: return "SizeMismatch";
    case Errc::mean_out_of_range: return "MeanOutOfRange";
    case Errc::infeasible_construction: return "InfeasibleConstruction";
    case Errc::empty_state: return "EmptyState";
    case Errc::out_of_domain: return "OutOfDomain";
    case Errc::malformed_program: return "MalformedProgram";
    case Errc::lift_failure: return "LiftFailure";
    case Errc::size_cap: return "SizeCap";
    case Errc::bad_config: return "BadConfig";
    case Errc::no_region: return "NoRegion";
    case Errc::parse_error: return "ParseError";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::internal: return "InternalError";
  }
  return "UnknownError";
}

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rat parse_rat(const std::string& text) {
  std::string s;
  s.reserve(text.size());
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) fail(Errc::parse_error, "empty rational literal");

  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = (s[0] == '-');
    s.erase(0, 1);
  }
  if (s.empty()) fail(Errc::parse_error, "sign without digits: '" + text + "'");

  auto slash = s.find('/');
  Rat value;
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      fail(Errc::parse_error, "malformed fraction: '" + text + "'");
    mpz_class n(num, 10), d(den, 10);
    if (d == 0) fail(Errc::parse_error, "zero denominator: '" + text + "'");
    value = Rat(n, d);
    value.canonicalize();
  } else {
    // Decimal with optional exponent, expanded exactly over powers of ten.
    long exp10 = 0;
    auto e = s.find_first_of("eE");
    if (e != std::string::npos) {
      std::string etail = s.substr(e + 1);
      s.erase(e);
      bool eneg = false;
      if (!etail.empty() && (etail[0] == '+' || etail[0] == '-')) {
        eneg = (etail[0] == '-');
        etail.erase(0, 1);
      }
      if (!all_digits(etail) || etail.size() > 6)
        fail(Errc::parse_error, "malformed exponent: '" + text + "'");
      exp10 = std::strtol(etail.c_str(), nullptr, 10);
      if (eneg) exp10 = -exp10;
    }
    std::string digits = s;
    auto dot = s.find('.');
    if (dot != std::string::npos) {
      digits = s.substr(0, dot) + s.substr(dot + 1);
      exp10 -= static_cast<long>(s.size() - dot - 1);
    }
    if (!all_digits(digits))
      fail(Errc::parse_error, "malformed decimal: '" + text + "'");
    mpz_class mantissa(digits, 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10,
                  static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    value = exp10 < 0 ? Rat(mantissa, scale) : Rat(mantissa * scale);
    value.canonicalize();
  }
  if (neg) value = -value;
  return value;
}

std::string rat_str(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string rat_decimal(const Rat& r, int max_digits) {
  mpz_class num = r.get_num();
  mpz_class den = r.get_den();
  std::string sign;
  if (num < 0) {
    sign = "-";
    num = -num;
  }
  mpz_class ipart = num / den;
  mpz_class rem = num % den;
  if (rem == 0) return sign + ipart.get_str();

  std::string frac;
  for (int i = 0; i < max_digits && rem != 0; ++i) {
    rem *= 10;
    mpz_class digit = rem / den;
    rem %= den;
    frac.push_back(static_cast<char>('0' + digit.get_si()));
  }
  if (rem != 0) {
    // Round half-up on the first dropped digit.
    rem *= 10;
    if (rem / den >= 5) {
      int i = static_cast<int>(frac.size()) - 1;
      for (; i >= 0; --i) {
        if (frac[i] != '9') {
          ++frac[i];
          break;
        }
        frac[i] = '0';
      }
      if (i < 0) ipart += 1;
    }
  }
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  if (frac.empty()) return sign + ipart.get_str();
  return sign + ipart.get_str() + "." + frac;
}

}  // namespace robagg
