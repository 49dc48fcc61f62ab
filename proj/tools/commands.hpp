#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ncprism/json_io.hpp"

namespace ncprism::cli {

inline constexpr int kExitTrue = 0;
inline constexpr int kExitFalse = 1;
inline constexpr int kExitError = 2;
inline constexpr int kExitUnknown = 3;

struct Check {
  std::string name;
  bool pass = true;
  double residual = 0.0;
};

struct CommandResult {
  Json payload;
  std::vector<Check> checks;
  std::vector<std::string> notes;  // extra human-readable lines
  int exit_code = kExitTrue;
};

struct Context {
  ToleranceConfig tol;
  std::uint64_t seed = 0;
};

struct PositivityFlags {
  std::size_t samples = 32;
  std::size_t max_iter = 5000;
  double epsilon = 1e-6;
  long size_budget = 16;
};

CommandResult dilate_halmos(const Json& in, bool unitary, const Context& ctx);
CommandResult dilate_mirman(const Json& in, std::size_t k, const Context& ctx);
CommandResult dilate_joint(const Json& in, std::size_t k, const Context& ctx);
CommandResult dilate_cube(const Json& in, const Context& ctx);

CommandResult rep_square(double lambda, const Context& ctx);
CommandResult rep_hadamard(std::size_t m, const Context& ctx);
CommandResult rep_vertex(std::size_t k, std::size_t j, int sign, const Context& ctx);
CommandResult rep_s3(const Context& ctx);
CommandResult rep_a4(const Context& ctx);
CommandResult rep_steinberg(std::uint32_t q, const Context& ctx);
CommandResult rep_assemble(std::size_t n, const Context& ctx);

CommandResult check_cube(const Json& in, std::size_t d, const Context& ctx);
CommandResult check_prism(const Json& in, std::size_t k, const Context& ctx);

CommandResult commutant_cmd(const Json& in, const Context& ctx);

CommandResult positivity_scalar(const Json& in, std::size_t k, const Context& ctx);
CommandResult positivity_matrix(const Json& in, std::size_t k, const PositivityFlags& flags, const Context& ctx);
CommandResult positivity_cube(const Json& in, const Context& ctx);

CommandResult geometry(std::size_t k, const Context& ctx);

CommandResult verify_all(long size_budget, const Context& ctx);

}  // namespace ncprism::cli
