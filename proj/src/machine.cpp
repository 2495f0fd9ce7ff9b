#include "creal/machine.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "creal/errors.hpp"

namespace cr {

namespace {

struct PendingInstruction {
  Opcode op;
  std::uint32_t reg = 0;
  std::string label;
  std::size_t line = 0;
};

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> words;
  std::istringstream in{std::string(text)};
  std::string word;
  while (in >> word) words.push_back(word);
  return words;
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
  return s;
}

bool valid_label(std::string_view name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '.';
  });
}

}  // namespace

Program Program::parse(std::string_view text) {
  std::vector<PendingInstruction> pending;
  std::map<std::string, std::size_t, std::less<>> labels;
  std::size_t line_no = 0;

  auto fail = [&](const std::string& what) -> InvalidProgram {
    return InvalidProgram("line " + std::to_string(line_no) + ": " + what);
  };
  auto parse_register = [&](const std::string& word) -> std::uint32_t {
    if (word.empty() || word.size() > 9 ||
        !std::all_of(word.begin(), word.end(), [](unsigned char c) { return std::isdigit(c); })) {
      throw fail("bad register '" + word + "'");
    }
    const auto reg = static_cast<std::uint32_t>(std::stoul(word));
    if (reg >= kMaxRegisters) throw fail("register " + word + " out of range");
    return reg;
  };

  std::istringstream lines{std::string(text)};
  std::string raw_line;
  while (std::getline(lines, raw_line)) {
    ++line_no;
    std::string_view line = raw_line;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    std::size_t start = 0;
    while (start <= line.size()) {
      auto end = line.find(';', start);
      if (end == std::string_view::npos) end = line.size();
      std::string_view stmt = line.substr(start, end - start);
      start = end + 1;

      // Leading `name:` prefixes.
      while (true) {
        const auto colon = stmt.find(':');
        if (colon == std::string_view::npos) break;
        auto words = split_words(stmt.substr(0, colon));
        if (words.size() != 1 || !valid_label(words[0])) throw fail("bad label");
        if (!labels.emplace(words[0], pending.size()).second) {
          throw fail("duplicate label '" + words[0] + "'");
        }
        stmt = stmt.substr(colon + 1);
      }

      auto words = split_words(stmt);
      if (words.empty()) continue;
      const std::string op = upper(words[0]);
      auto expect_args = [&](std::size_t n) {
        if (words.size() != n + 1) throw fail(op + " takes " + std::to_string(n) + " operand(s)");
      };
      PendingInstruction ins{Opcode::Halt, 0, {}, line_no};
      if (op == "INC" || op == "DEC") {
        expect_args(1);
        ins.op = op == "INC" ? Opcode::Inc : Opcode::Dec;
        ins.reg = parse_register(words[1]);
      } else if (op == "JZ") {
        expect_args(2);
        ins.op = Opcode::Jz;
        ins.reg = parse_register(words[1]);
        ins.label = words[2];
      } else if (op == "GOTO") {
        expect_args(1);
        ins.op = Opcode::Goto;
        ins.label = words[1];
      } else if (op == "HALT") {
        expect_args(0);
      } else {
        throw fail("unknown instruction '" + words[0] + "'");
      }
      pending.push_back(std::move(ins));
    }
  }

  Program program;
  program.code_.reserve(pending.size());
  for (const auto& [name, index] : labels) {
    if (index >= pending.size()) {
      throw InvalidProgram("label '" + name + "' does not name an instruction");
    }
  }
  for (const auto& p : pending) {
    Instruction ins{p.op, p.reg, 0};
    if (p.op == Opcode::Jz || p.op == Opcode::Goto) {
      auto it = labels.find(p.label);
      if (it == labels.end()) {
        throw InvalidProgram("line " + std::to_string(p.line) + ": unknown label '" + p.label + "'");
      }
      ins.target = it->second;
    }
    program.register_count_ = std::max(program.register_count_, p.reg + 1);
    program.code_.push_back(ins);
  }
  return program;
}

Program Program::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open program file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

Execution::Execution(const Program& program, std::uint64_t input)
    : program_(&program), registers_(program.register_count()) {
  registers_[0] = input;
  halted_ = program.code().empty();
}

void Execution::step() {
  if (halted_) return;
  const auto& code = program_->code();
  const Instruction& ins = code[pc_];
  ++steps_;
  switch (ins.op) {
    case Opcode::Inc:
      ++registers_[ins.reg];
      ++pc_;
      break;
    case Opcode::Dec:
      if (registers_[ins.reg] > 0) --registers_[ins.reg];
      ++pc_;
      break;
    case Opcode::Jz:
      pc_ = registers_[ins.reg] == 0 ? ins.target : pc_ + 1;
      break;
    case Opcode::Goto:
      pc_ = ins.target;
      break;
    case Opcode::Halt:
      halted_ = true;
      return;
  }
  if (pc_ >= code.size()) halted_ = true;
}

RunOutcome run_for(const Program& program, std::uint64_t input, Steps budget) {
  Execution run(program, input);
  while (!run.halted() && run.steps() < budget) run.step();
  if (run.halted()) return Halted{run.steps()};
  return StillRunning{budget};
}

std::string describe(const RunOutcome& outcome) {
  if (const auto* h = std::get_if<Halted>(&outcome)) return "halted steps=" + std::to_string(h->steps);
  return "running budget=" + std::to_string(std::get<StillRunning>(outcome).budget);
}

std::vector<Emission> dovetail(std::span<const DovetailJob> jobs, Steps total_budget) {
  std::vector<Execution> runs;
  runs.reserve(jobs.size());
  std::vector<std::size_t> pending;
  std::vector<Emission> emitted;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    runs.emplace_back(*jobs[j].program, jobs[j].input);
    // An empty program halts without executing anything.
    if (runs.back().halted()) {
      emitted.push_back({j, jobs[j].input, 0});
    } else {
      pending.push_back(j);
    }
  }

  Steps spent = 0;
  while (!pending.empty() && spent < total_budget) {
    std::vector<std::size_t> still;
    still.reserve(pending.size());
    for (std::size_t idx = 0; idx < pending.size(); ++idx) {
      if (spent == total_budget) {
        still.insert(still.end(), pending.begin() + static_cast<std::ptrdiff_t>(idx), pending.end());
        break;
      }
      const std::size_t j = pending[idx];
      runs[j].step();
      ++spent;
      if (runs[j].halted()) {
        emitted.push_back({j, jobs[j].input, runs[j].steps()});
      } else {
        still.push_back(j);
      }
    }
    pending = std::move(still);
  }
  return emitted;
}

std::vector<Emission> dovetail_enumerate(const Program& program, std::uint64_t first,
                                         std::uint64_t last, Steps total_budget) {
  std::vector<DovetailJob> jobs;
  for (std::uint64_t input = first; input <= last; ++input) {
    jobs.push_back({&program, input});
    if (input == last) break;
  }
  return dovetail(jobs, total_budget);
}

}  // namespace cr
