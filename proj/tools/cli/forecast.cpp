#include <ostream>

#include "cli/commands.hpp"
#include "cli/format.hpp"
#include "nsfts/checkpoint.hpp"
#include "nsfts/errors.hpp"

namespace nsfts::cli {

int run_forecast(const ForecastOptions& options, std::ostream& out, std::ostream& log) {
  if (options.train.has_value() == options.model.has_value()) {
    log << "forecast: exactly one of --train or --model is required\n";
    return kExitInvalid;
  }

  NsftsModel model;
  std::vector<double> input;
  try {
    if (options.model) {
      model = load_checkpoint(*options.model);
    } else {
      NsftsConfig config;
      config.fts.partitions = options.k;
      config.fts.padding = options.padding;
      config.residual_window = options.w;
      MethodParams params;
      params.nsfts = config;
      apply_flags(options.flags, params);
      const auto training = load_csv(*options.train, options.column, options.header);
      model = train_nsfts(training.values, params.nsfts);
    }
    input = read_csv_column(options.input, options.column, options.header);
  } catch (const Error& e) {
    log << "forecast: " << e.what() << '\n';
    return kExitInvalid;
  }
  if (options.model && (options.flags.no_normalize || options.flags.sigma_squared || options.flags.paper_exact_universe))
    log << "forecast: model flags are ignored when resuming from a checkpoint\n";

  try {
    out << "t,y,forecast,source\n";
    for (std::size_t t = 0; t < input.size(); ++t) {
      model.adapt(input[t]);
      const auto f = model.forecast(input[t]);
      out << t << ',' << format_double(input[t]) << ',' << format_double(f.value) << ','
          << (f.source == ForecastSource::Rules ? "rules" : "fallback") << '\n';
    }
    out.flush();
    if (options.checkpoint) save_checkpoint(model, *options.checkpoint);
  } catch (const Error& e) {
    log << "forecast: " << e.what() << '\n';
    return kExitCellFailed;
  }
  return kExitOk;
}

}  // namespace nsfts::cli
