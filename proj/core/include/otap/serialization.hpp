#pragma once

#include <string>
#include <vector>

#include "otap/analysis.hpp"
#include "otap/generator.hpp"
#include "otap/lp_offline.hpp"
#include "otap/model.hpp"
#include "otap/simulator.hpp"
#include "otap/taxi.hpp"

namespace otap {

// Instance document: top-level keys agents, task_types, edges, horizon,
// arrival. Arrival is the dense row-major p[v][t] matrix; occupation pmfs
// are sparse {"length": probability} maps; budgets are integers or "inf".
std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);
Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

// Solution document: objective plus sparse records {agent, type, t, value}
// with 1-based t.
std::string solution_to_json(const LpSolution& sol, const Instance& inst,
                             const Indexer& idx);
LpSolution solution_from_json(const std::string& text, const Instance& inst,
                              const Indexer& idx);
void save_solution(const LpSolution& sol, const Instance& inst, const Indexer& idx,
                   const std::string& path);
LpSolution load_solution(const std::string& path, const Instance& inst, const Indexer& idx);

// policy,N,mean,std,stderr,lp_objective,ratio
std::string reports_to_csv(const std::vector<RunReport>& reports);
// check,instance,pass,slack
std::string checks_to_csv(const std::vector<CheckResult>& checks);

// Config documents mirroring the parameter struct fields.
SyntheticParams synthetic_params_from_json(const std::string& text);
IngestParams ingest_params_from_json(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace otap
