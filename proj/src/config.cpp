#include "notesketch/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <utility>
#include <variant>

#include "json.hpp"
#include "notesketch/error.hpp"

namespace notesketch {
namespace {

using Field = std::variant<double RecognitionConfig::*, int RecognitionConfig::*>;

#define NS_FIELD(name) std::pair<const char*, Field>{#name, &RecognitionConfig::name}

const std::pair<const char*, Field> kFields[] = {
    NS_FIELD(scoreThreshold),       NS_FIELD(maxMatchDistance),
    NS_FIELD(staffStraightness),    NS_FIELD(staffWidthCoverage),
    NS_FIELD(staffMaxSlope),        NS_FIELD(staffMinSeparation),
    NS_FIELD(bassMaxHeight),        NS_FIELD(trebleMinHeight),
    NS_FIELD(trebleMaxHeight),      NS_FIELD(accidentalMinHeight),
    NS_FIELD(accidentalMaxHeight),  NS_FIELD(keyMaxGap),
    NS_FIELD(flatAnchor),           NS_FIELD(digitMinHeight),
    NS_FIELD(digitMaxHeight),       NS_FIELD(digitAlignment),
    NS_FIELD(timeSignatureMinSpan), NS_FIELD(digitHalfTolerance),
    NS_FIELD(restMinHeight),        NS_FIELD(restMaxHeight),
    NS_FIELD(restCenterTolerance),  NS_FIELD(blockRestMinWidth),
    NS_FIELD(blockRestMaxWidth),    NS_FIELD(blockRestMaxHeight),
    NS_FIELD(fillContainment),      NS_FIELD(containmentMargin),
    NS_FIELD(strawWindow),          NS_FIELD(strawThreshold),
    NS_FIELD(segmentStraightness),  NS_FIELD(circumferenceTolerance),
    NS_FIELD(headMinAspect),        NS_FIELD(headClosure),
    NS_FIELD(headMinHeight),        NS_FIELD(headMaxHeight),
    NS_FIELD(blobMinInk),           NS_FIELD(blobMinAspect),
    NS_FIELD(barStraightness),      NS_FIELD(barMaxSlant),
    NS_FIELD(barSpanSlack),         NS_FIELD(doubleBarGap),
    NS_FIELD(attachDistance),       NS_FIELD(componentStraightness),
    NS_FIELD(stemMaxSlant),         NS_FIELD(stemMinLength),
    NS_FIELD(stemMaxLength),
    NS_FIELD(ledgerMaxSlope),       NS_FIELD(ledgerStraightness),
    NS_FIELD(ledgerMinLength),      NS_FIELD(ledgerMaxLength),
    NS_FIELD(ledgerSnap),
    NS_FIELD(beamEndDistance),      NS_FIELD(dotMaxPoints),
    NS_FIELD(dotMaxDiagonal),       NS_FIELD(flagSlack),
    NS_FIELD(flagMinSlope),         NS_FIELD(flagMaxSlope),
    NS_FIELD(flagMinHeight),        NS_FIELD(flagMaxHeight),
    NS_FIELD(accidentalMaxGap),     NS_FIELD(maxCombination),
    NS_FIELD(pendingCap),           NS_FIELD(cascadeRadius),
};

#undef NS_FIELD

}  // namespace

RecognitionConfig config_from_json_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedConfig, std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::MalformedConfig, "config must be a JSON object");

  RecognitionConfig config;
  for (const auto& [key, value] : doc.items()) {
    const Field* field = nullptr;
    for (const auto& [name, f] : kFields) {
      if (key == name) field = &f;
    }
    if (field == nullptr) throw Error(ErrorCode::MalformedConfig, "unknown config key '" + key + "'");
    if (!value.is_number()) {
      throw Error(ErrorCode::MalformedConfig, "config key '" + key + "' must be a number");
    }
    std::visit(
        [&](auto member) {
          using T = std::remove_reference_t<decltype(config.*member)>;
          config.*member = value.get<T>();
        },
        *field);
  }
  if (config.maxCombination < 1 || config.pendingCap < 1) {
    throw Error(ErrorCode::MalformedConfig, "maxCombination and pendingCap must be positive");
  }
  return config;
}

RecognitionConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return config_from_json_text(buffer.str());
}

RecognitionConfig config_from_environment() {
  if (const char* path = std::getenv("NOTESKETCH_CONFIG"); path != nullptr && *path != '\0') {
    return load_config(path);
  }
  return {};
}

}  // namespace notesketch
