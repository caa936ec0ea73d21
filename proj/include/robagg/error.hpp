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

#ifndef ROBAGG_ERROR_HPP_
#define ROBAGG_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace robagg {

// Domain error kinds. Kept in sync with robagg_status in robagg.h.
enum class Errc {
  ordering_violation,
  prior_out_of_range,
  degenerate_scenario,
  one_sided_marginal,
  prior_mismatch,
  sign_violation,
  mixture_violation,
  zero_denominator,
  size_mismatch,
  mean_out_of_range,
  infeasible_construction,
  empty_state,
  out_of_domain,
  malformed_program,
  lift_failure,
  size_cap,
  bad_config,
  no_region,
  parse_error,
  invalid_argument,
  internal,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace robagg

#endif  // ROBAGG_ERROR_HPP_
