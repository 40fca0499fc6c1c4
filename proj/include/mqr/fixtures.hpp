#pragma once

#include <string>
#include <vector>

namespace mqr {

struct FixtureResult {
  bool ok = false;
  std::string report;
};

/// Built-in fixture names: sec4-reduction, example6, wild-plane, prop8,
/// gelfand-d4. Each reproduces the corresponding worked computation and
/// reports one line per checked fact.
std::vector<std::string> fixture_names();

/// The DSL document of a fixture (as shipped under fixtures/).
std::string fixture_document(const std::string& name);

/// Run a fixture's verification. The field override applies where it makes
/// sense (the wild plane); 0 keeps the document's field.
FixtureResult run_fixture(const std::string& name, uint32_t p_override = 0);

}  // namespace mqr
