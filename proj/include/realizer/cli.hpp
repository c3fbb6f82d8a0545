#pragma once

// Subcommands of the `realizer` tool. Results go to `out`, diagnostics to
// `err`; each returns the process exit status.

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "realizer/extract.hpp"
#include "realizer/harness.hpp"
#include "realizer/proof_script.hpp"
#include "realizer/reduce.hpp"
#include "realizer/term_syntax.hpp"

namespace realizer::cli {

using logic::Natural;

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;

struct Loaded {
  kernel::ParsedProof parsed;
  kernel::CheckedProof checked;
};

/// Reads, parses and checks a proof script, reporting any error to `err`.
inline std::optional<Loaded> load(const std::string& path, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << path << ": cannot open file\n";
    return std::nullopt;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  std::optional<kernel::ParsedProof> parsed;
  try {
    parsed = kernel::parse_proof_script(buf.str());
  } catch (const ParseError& e) {
    err << path << ":" << e.what() << "\n";
    return std::nullopt;
  }
  try {
    auto checked = kernel::check(parsed->proof);
    return Loaded{std::move(*parsed), std::move(checked)};
  } catch (const kernel::CheckError& e) {
    err << path << ":" << to_string(parsed->position_of(e.path())) << ": " << e.what() << "\n";
    return std::nullopt;
  }
}

inline int cmd_check(const std::string& path, std::ostream& out, std::ostream& err) {
  auto loaded = load(path, err);
  if (!loaded) return kExitFail;
  out << logic::to_string(loaded->checked.conclusion) << "\n";
  if (loaded->checked.open.empty()) {
    out << "open assumptions: none\n";
  } else {
    out << "open assumptions:\n";
    for (const auto& [label, f] : loaded->checked.open) out << "  " << label << ": " << f << "\n";
  }
  return kExitOk;
}

inline int cmd_extract(const std::string& path, std::ostream& out, std::ostream& err) {
  auto loaded = load(path, err);
  if (!loaded) return kExitFail;
  out << lambda::to_string(extraction::extract(loaded->checked)) << "\n";
  return kExitOk;
}

inline int cmd_run(const std::string& path, const std::vector<Natural>& args, std::uint64_t fuel,
                   std::ostream& out, std::ostream& err) {
  auto loaded = load(path, err);
  if (!loaded) return kExitFail;
  std::optional<harness::Pi2Shape> shape;
  try {
    if (!loaded->checked.open.empty()) throw harness::NotPi2("proof has open assumptions");
    shape = harness::pi2_shape(loaded->checked.conclusion);
  } catch (const harness::NotPi2& e) {
    err << path << ": " << e.what() << "\n";
    return kExitFail;
  }
  if (args.size() != shape->inputs.size()) {
    err << "ArityMismatch: the statement quantifies over " << shape->inputs.size()
        << " variable(s), got " << args.size() << " argument(s)\n";
    return kExitFail;
  }
  lambda::Term t = extraction::extract(loaded->checked);
  for (Natural a : args) t = lambda::app(t, lambda::numeral(a));
  auto r = lambda::reduce(lambda::left(t), fuel);
  if (!r.normal) {
    err << "FuelExhausted: no normal form within " << r.steps << " steps\n";
    return kExitFail;
  }
  auto w = r.term.arithmetical();
  if (!w) {
    err << "StuckTerm: witness normalized to " << lambda::to_string(r.term) << "\n";
    return kExitFail;
  }
  out << *w << "\n";
  return kExitOk;
}

inline int cmd_verify(const std::string& path, Natural bound, std::uint64_t fuel, std::ostream& out,
                      std::ostream& err) {
  auto loaded = load(path, err);
  if (!loaded) return kExitFail;
  std::optional<harness::VerifyReport> verified;
  try {
    verified = harness::verify_pi2(loaded->checked, bound, fuel);
  } catch (const harness::NotPi2& e) {
    err << path << ": " << e.what() << "\n";
    return kExitFail;
  }
  const auto& report = *verified;
  std::uint64_t max_steps = 0;
  for (const auto& e : report.results) {
    max_steps = std::max(max_steps, e.steps);
    if (e.holds) continue;
    out << "fail (";
    for (std::size_t i = 0; i < e.inputs.size(); ++i) out << (i ? ", " : "") << e.inputs[i];
    out << "): ";
    if (e.witness) {
      out << "witness " << *e.witness << " violates the statement\n";
    } else {
      out << "stuck after " << e.steps << " steps\n";
    }
  }
  out << report.pass_count() << "/" << report.results.size() << " pass\n";
  out << "max steps: " << max_steps << "\n";
  return report.all_pass ? kExitOk : kExitFail;
}

}  // namespace realizer::cli
