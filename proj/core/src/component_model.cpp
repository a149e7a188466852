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

#include "opminer/component_model.hpp"

namespace opminer {

MetaModel component_metamodel() {
  MetaModel mm;
  for (const char* t : {"Package", "Component", "SwImplementation", "Port",
                        "Connector", "Requirement"}) {
    mm.add_node_type(t);
  }
  mm.add_edge_type({"components", "Package", "Component", true});
  mm.add_edge_type({"swImplementations", "Package", "SwImplementation", true});
  mm.add_edge_type({"connectors", "Package", "Connector", true});
  mm.add_edge_type({"requirements", "Package", "Requirement", true});
  mm.add_edge_type({"ports", "Component", "Port", true});
  mm.add_edge_type({"implementation", "Component", "SwImplementation", false});
  mm.add_edge_type({"ends", "Connector", "Port", false});
  mm.add_edge_type({"satisfiedBy", "Requirement", "Component", false});
  mm.add_edge_type({"allocatedTo", "Requirement", "Connector", false});
  return mm;
}

EditRule connect_components_rule() {
  EditRule r;
  r.name = "connectComponents";
  r.context_nodes = {{"pkg", "Package"}, {"c1", "Component"}, {"c2", "Component"}};
  r.created_nodes = {{"p1", "Port"},
                     {"p2", "Port"},
                     {"con", "Connector"},
                     {"req", "Requirement"}};
  r.created_edges = {{"c1", "p1", "ports"},        {"c2", "p2", "ports"},
                     {"con", "p1", "ends"},        {"con", "p2", "ends"},
                     {"pkg", "con", "connectors"}, {"pkg", "req", "requirements"},
                     {"req", "con", "allocatedTo"}};
  return r;
}

EditRule add_component_rule() {
  EditRule r;
  r.name = "addComponent";
  r.context_nodes = {{"pkg", "Package"}};
  r.created_nodes = {
      {"comp", "Component"}, {"impl", "SwImplementation"}, {"req", "Requirement"}};
  r.created_edges = {{"pkg", "comp", "components"},
                     {"pkg", "impl", "swImplementations"},
                     {"pkg", "req", "requirements"},
                     {"comp", "impl", "implementation"},
                     {"req", "comp", "satisfiedBy"}};
  return r;
}

EditRule add_requirement_to_connector_rule() {
  EditRule r;
  r.name = "addRequirementToConnector";
  r.context_nodes = {{"pkg", "Package"}, {"con", "Connector"}};
  r.created_nodes = {{"req", "Requirement"}};
  r.created_edges = {{"pkg", "req", "requirements"}, {"req", "con", "allocatedTo"}};
  return r;
}

EditRule add_port_to_component_rule() {
  EditRule r;
  r.name = "addPortToComponent";
  r.context_nodes = {{"comp", "Component"}};
  r.created_nodes = {{"port", "Port"}};
  r.created_edges = {{"comp", "port", "ports"}};
  return r;
}

EditRule delete_requirement_rule() {
  EditRule r;
  r.name = "deleteRequirement";
  r.context_nodes = {{"pkg", "Package"}};
  r.deleted_nodes = {{"req", "Requirement"}};
  r.deleted_edges = {{"pkg", "req", "requirements"}};
  return r;
}

EditRule delete_connector_rule() {
  EditRule r;
  r.name = "deleteConnector";
  r.context_nodes = {
      {"pkg", "Package"}, {"p1", "Port"}, {"p2", "Port"}, {"req", "Requirement"}};
  r.deleted_nodes = {{"con", "Connector"}};
  r.deleted_edges = {{"pkg", "con", "connectors"},
                     {"con", "p1", "ends"},
                     {"con", "p2", "ends"},
                     {"req", "con", "allocatedTo"}};
  return r;
}

EditRule add_sw_implementation_rule() {
  EditRule r;
  r.name = "addSwImplementation";
  r.context_nodes = {{"pkg", "Package"}, {"comp", "Component"}};
  r.created_nodes = {{"impl", "SwImplementation"}};
  r.created_edges = {{"pkg", "impl", "swImplementations"},
                     {"comp", "impl", "implementation"}};
  return r;
}

std::vector<EditRule> default_perturbation_rules() {
  return {add_requirement_to_connector_rule(), add_port_to_component_rule(),
          delete_requirement_rule(), delete_connector_rule()};
}

}  // namespace opminer
