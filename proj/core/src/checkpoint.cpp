#include "nsfts/checkpoint.hpp"

#include <fstream>

#include "nsfts/errors.hpp"

namespace nsfts {

using nlohmann::json;

json rulebase_to_json(const RuleBase& rules) {
  json out = json::array();
  for (const auto& r : rules.rules()) out.push_back({{"lhs", r.lhs}, {"rhs", r.rhs}});
  return out;
}

std::string serialize_rulebase(const RuleBase& rules) { return rulebase_to_json(rules).dump(); }

json to_json(const NsftsModel& model) {
  const Partition& p = model.partition();
  json sets = json::array();
  for (const auto& s : p.sets()) {
    sets.push_back({{"lower", s.base().lower},
                    {"mid", s.base().mid},
                    {"upper", s.base().upper},
                    {"delta", s.perturbation().displacement},
                    {"rho", s.perturbation().scale}});
  }
  json doc;
  doc["format"] = kCheckpointFormat;
  doc["version"] = kCheckpointVersion;
  doc["options"] = {{"normalize", model.core().normalize()},
                    {"spread", model.spread() == SpreadMeasure::Variance ? "variance" : "stdev"}};
  doc["universe"] = {{"lower", p.universe().lower}, {"upper", p.universe().upper}};
  doc["sets"] = std::move(sets);
  doc["rules"] = rulebase_to_json(model.rules());
  doc["residuals"] = {{"capacity", model.residuals().capacity()}, {"values", model.residuals().values()}};
  doc["last_forecast"] = model.last_forecast() ? json(*model.last_forecast()) : json(nullptr);
  return doc;
}

NsftsModel nsfts_from_json(const json& doc) {
  try {
    if (doc.at("format").get<std::string>() != kCheckpointFormat) {
      throw DataError("checkpoint: unexpected format tag '" + doc.at("format").get<std::string>() + "'");
    }
    const int version = doc.at("version").get<int>();
    if (version != kCheckpointVersion) {
      throw DataError("checkpoint: version " + std::to_string(version) + " is not supported (expected " +
                      std::to_string(kCheckpointVersion) + ")");
    }
    const auto& opts = doc.at("options");
    const bool normalize = opts.at("normalize").get<bool>();
    const std::string spread_name = opts.at("spread").get<std::string>();
    if (spread_name != "stdev" && spread_name != "variance") {
      throw DataError("checkpoint: unknown spread measure '" + spread_name + "'");
    }
    const SpreadMeasure spread = spread_name == "variance" ? SpreadMeasure::Variance : SpreadMeasure::StdDev;

    const Universe universe{doc.at("universe").at("lower").get<double>(),
                            doc.at("universe").at("upper").get<double>()};
    std::vector<FuzzySet> sets;
    const auto& jsets = doc.at("sets");
    for (std::size_t i = 0; i < jsets.size(); ++i) {
      const auto& js = jsets[i];
      FuzzySet s(i, {js.at("lower").get<double>(), js.at("mid").get<double>(), js.at("upper").get<double>()});
      s.perturb({js.at("delta").get<double>(), js.at("rho").get<double>()});
      sets.push_back(s);
    }
    Partition partition(universe, std::move(sets));

    RuleBase rules(partition.size());
    for (const auto& jr : doc.at("rules")) {
      const auto lhs = jr.at("lhs").get<std::size_t>();
      for (const auto& rhs : jr.at("rhs")) rules.add({lhs, rhs.get<std::size_t>()});
    }

    const auto& jres = doc.at("residuals");
    ResidualWindow window(jres.at("capacity").get<std::size_t>());
    const auto& values = jres.at("values");
    if (values.size() > window.capacity()) throw DataError("checkpoint: more residuals than capacity");
    for (const auto& v : values) window.push(v.get<double>());

    std::optional<double> last;
    if (!doc.at("last_forecast").is_null()) last = doc.at("last_forecast").get<double>();

    return NsftsModel(FtsModel(std::move(partition), std::move(rules), normalize), std::move(window), last,
                      spread);
  } catch (const json::exception& e) {
    throw DataError(std::string("checkpoint: malformed document: ") + e.what());
  } catch (const DataError&) {
    throw;
  } catch (const Error& e) {
    throw DataError(std::string("checkpoint: invalid model state: ") + e.what());
  }
}

void save_checkpoint(const NsftsModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write checkpoint '" + path.string() + "'");
  out << to_json(model).dump(2) << '\n';
}

NsftsModel load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open checkpoint '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw DataError("checkpoint '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return nsfts_from_json(doc);
}

}  // namespace nsfts
