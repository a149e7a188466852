// Copyright 2026 The opminer Authors
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

#ifndef OPMINER_TESTS_SUPPORT_FIXTURES_HPP_
#define OPMINER_TESTS_SUPPORT_FIXTURES_HPP_

#include "opminer/model.hpp"

namespace opminer::testing {

// A Package with two Components (each with a SwImplementation) and one
// Requirement satisfied by the first.
inline ModelVersion running_example_old() {
  ModelVersion m;
  m.add_element("pkg", "Package");
  m.add_element("comp1", "Component");
  m.add_element("comp2", "Component");
  m.add_element("impl1", "SwImplementation");
  m.add_element("impl2", "SwImplementation");
  m.add_element("req0", "Requirement");
  m.add_reference({"pkg", "comp1", "components"});
  m.add_reference({"pkg", "comp2", "components"});
  m.add_reference({"pkg", "impl1", "swImplementations"});
  m.add_reference({"pkg", "impl2", "swImplementations"});
  m.add_reference({"pkg", "req0", "requirements"});
  m.add_reference({"comp1", "impl1", "implementation"});
  m.add_reference({"comp2", "impl2", "implementation"});
  m.add_reference({"req0", "comp1", "satisfiedBy"});
  return m;
}

// The two Components connected: a Port on each, a Connector between the
// Ports and a Requirement allocated to the Connector (4 new elements and
// 7 new references).
inline ModelVersion running_example_new() {
  ModelVersion m = running_example_old();
  m.add_element("port1", "Port");
  m.add_element("port2", "Port");
  m.add_element("con", "Connector");
  m.add_element("req1", "Requirement");
  m.add_reference({"comp1", "port1", "ports"});
  m.add_reference({"comp2", "port2", "ports"});
  m.add_reference({"con", "port1", "ends"});
  m.add_reference({"con", "port2", "ends"});
  m.add_reference({"pkg", "con", "connectors"});
  m.add_reference({"pkg", "req1", "requirements"});
  m.add_reference({"req1", "con", "allocatedTo"});
  return m;
}

}  // namespace opminer::testing

#endif  // OPMINER_TESTS_SUPPORT_FIXTURES_HPP_
