#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace cr {

using Steps = std::uint64_t;

enum class Opcode { Inc, Dec, Jz, Goto, Halt };

struct Instruction {
  Opcode op;
  std::uint32_t reg = 0;     // Inc, Dec, Jz
  std::size_t target = 0;    // Jz, Goto (resolved instruction index)

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

/// Counter-machine program with labels resolved at load time.
///
/// Text form: one instruction per line (`;` also separates instructions),
/// optional `name:` label prefixes, `#` starts a comment.
///
///     INC r | DEC r | JZ r label | GOTO label | HALT
///
/// A label may stand alone on a line; it then names the next instruction.
class Program {
 public:
  /// Largest register index a program may reference, plus one.
  static constexpr std::uint32_t kMaxRegisters = 1024;

  /// Throws InvalidProgram on syntax errors, unknown/duplicate labels, labels
  /// that name no instruction, or register indices >= kMaxRegisters.
  static Program parse(std::string_view text);
  static Program load(const std::filesystem::path& path);

  const std::vector<Instruction>& code() const { return code_; }
  std::uint32_t register_count() const { return register_count_; }

 private:
  std::vector<Instruction> code_;
  std::uint32_t register_count_ = 1;
};

struct Halted {
  Steps steps;
  friend bool operator==(const Halted&, const Halted&) = default;
};

struct StillRunning {
  Steps budget;
  friend bool operator==(const StillRunning&, const StillRunning&) = default;
};

using RunOutcome = std::variant<Halted, StillRunning>;

/// Single run of a program: input in register 0, all others zero.
/// One executed instruction is one step; HALT counts as a step, and control
/// leaving the code after step k halts the run at k.
class Execution {
 public:
  Execution(const Program& program, std::uint64_t input);
  Execution(Program&&, std::uint64_t) = delete;

  /// Executes one instruction. No-op once halted.
  void step();

  bool halted() const { return halted_; }
  Steps steps() const { return steps_; }
  const mpz_class& reg(std::uint32_t index) const { return registers_.at(index); }

 private:
  const Program* program_;
  std::vector<mpz_class> registers_;
  std::size_t pc_ = 0;
  Steps steps_ = 0;
  bool halted_ = false;
};

RunOutcome run_for(const Program& program, std::uint64_t input, Steps budget);

std::string describe(const RunOutcome& outcome);

struct DovetailJob {
  const Program* program;
  std::uint64_t input;
};

struct Emission {
  std::size_t job;       // index into the job list
  std::uint64_t input;
  Steps steps;

  friend bool operator==(const Emission&, const Emission&) = default;
};

/// Round-robin: every pending job gets one more step per sweep, in job
/// order; a job is emitted the moment it halts. Stops once total_budget
/// steps have been executed across all jobs or nothing is pending.
std::vector<Emission> dovetail(std::span<const DovetailJob> jobs, Steps total_budget);

/// dovetail over inputs first..last (inclusive) of a single program.
std::vector<Emission> dovetail_enumerate(const Program& program, std::uint64_t first,
                                         std::uint64_t last, Steps total_budget);

}  // namespace cr
