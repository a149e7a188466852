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

#ifndef OPMINER_COMPONENT_MODEL_HPP_
#define OPMINER_COMPONENT_MODEL_HPP_

#include <vector>

#include "opminer/model.hpp"
#include "opminer/rulegen.hpp"

namespace opminer {

// A small component meta-model: Packages own Components,
// SwImplementations, Connectors and Requirements; Components own Ports.
// Non-containment edges: implementation (Component -> SwImplementation),
// ends (Connector -> Port), satisfiedBy (Requirement -> Component),
// allocatedTo (Requirement -> Connector).
MetaModel component_metamodel();

// Connects two Components of a Package: a Port on each, a Connector
// between the Ports and a Requirement allocated to the Connector.
// 7 nodes, 7 edges.
EditRule connect_components_rule();

// Adds a Component with its SwImplementation and a Requirement satisfied
// by it to a Package. 4 nodes, 5 edges.
EditRule add_component_rule();

// Perturbation rules used by the simulator.
EditRule add_requirement_to_connector_rule();
EditRule add_port_to_component_rule();
// Deletes a Requirement that nothing else references.
EditRule delete_requirement_rule();
// Deletes a two-ended Connector together with its single allocated
// Requirement link. Applied to a freshly connected pair of Components it
// splits the change into small fragments.
EditRule delete_connector_rule();
// Not part of the default perturbation catalog.
EditRule add_sw_implementation_rule();

// addRequirementToConnector, addPortToComponent, deleteRequirement,
// deleteConnector.
std::vector<EditRule> default_perturbation_rules();

}  // namespace opminer

#endif  // OPMINER_COMPONENT_MODEL_HPP_
