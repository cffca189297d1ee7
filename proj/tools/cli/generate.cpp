#include <fstream>
#include <ostream>

#include "cli/commands.hpp"
#include "cli/format.hpp"
#include "nsfts/errors.hpp"

namespace nsfts::cli {

int run_generate(const GenerateOptions& options, std::ostream& out, std::ostream& log) {
  const auto kind = parse_drift_kind(options.kind);
  if (!kind) {
    log << "generate: unknown drift kind '" << options.kind << "'; valid kinds: " << drift_kind_list() << '\n';
    return kExitInvalid;
  }
  DriftSpec spec = options.spec;
  spec.kind = *kind;

  Dataset ds;
  try {
    ds = generate(spec);
  } catch (const Error& e) {
    log << "generate: " << e.what() << '\n';
    return kExitInvalid;
  }

  std::ofstream file;
  if (options.out) {
    file.open(*options.out, std::ios::binary | std::ios::trunc);
    if (!file) {
      log << "generate: cannot write '" << options.out->string() << "'\n";
      return kExitInvalid;
    }
  }
  std::ostream& sink = options.out ? file : out;
  if (options.header) sink << "value\n";
  for (double v : ds.values) sink << format_double(v) << '\n';
  sink.flush();
  if (!sink) {
    log << "generate: write failed\n";
    return kExitCellFailed;
  }
  return kExitOk;
}

}  // namespace nsfts::cli
