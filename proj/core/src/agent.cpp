// Copyright 2026 The cellclust Authors
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

#include "cellclust/agent.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <thread>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "cellclust/format.hpp"
#include "json_util.hpp"
#include "text_util.hpp"

namespace cellclust {

using nlohmann::ordered_json;

ordered_json chat_request_to_json(const ChatRequest& request) {
  ordered_json j;
  j["model"] = request.model;
  j["messages"] = ordered_json::array();
  for (const ChatMessage& m : request.messages) {
    j["messages"].push_back({{"role", m.role}, {"content", m.content}});
  }
  j["temperature"] = request.temperature;
  if (!request.stop.empty()) j["stop"] = request.stop;
  return j;
}

ScriptedBackend::ScriptedBackend(std::vector<std::string> responses)
    : responses_(std::move(responses)) {
  if (responses_.empty()) throw Error("scripted transcript is empty");
}

std::string ScriptedBackend::complete(const ChatRequest& /*request*/) {
  std::lock_guard<std::mutex> lock(mu_);
  if (next_ >= responses_.size()) {
    throw BackendError(fmt::format("scripted transcript exhausted after {} "
                                   "responses",
                                   responses_.size()),
                       /*retryable=*/false);
  }
  return responses_[next_++];
}

std::size_t ScriptedBackend::calls() const {
  std::lock_guard<std::mutex> lock(mu_);
  return next_;
}

std::vector<std::string> parse_transcript(std::string_view text) {
  std::vector<std::string> out;
  std::size_t line_no = 0;
  for (std::string_view line : detail::split_lines(text)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    ordered_json j;
    try {
      j = detail::parse_json_strict(line);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no);
    }
    if (j.is_string()) {
      out.push_back(j.get<std::string>());
    } else if (j.is_object() && j.contains("response") &&
               j["response"].is_string()) {
      out.push_back(j["response"].get<std::string>());
    } else {
      throw ParseError("transcript line must be a string or {\"response\": ...}",
                       line_no);
    }
  }
  return out;
}

std::vector<std::string> read_transcript_file(
    const std::filesystem::path& path) {
  return parse_transcript(detail::read_file(path));
}

std::string serialize_transcript(const std::vector<std::string>& responses) {
  std::string out;
  for (const std::string& r : responses) {
    out += ordered_json(r).dump();
    out += '\n';
  }
  return out;
}

std::chrono::milliseconds RetryPolicy::delay_before(int attempt) const {
  const double factor = std::pow(multiplier, std::max(0, attempt - 2));
  return std::chrono::milliseconds(
      static_cast<std::int64_t>(static_cast<double>(initial_delay.count()) * factor));
}

void AgentConfig::validate() const {
  if (max_iterations < 1) throw Error("max_iterations must be >= 1");
  if (!(llm_temperature >= 0.0)) throw Error("llm_temperature must be >= 0");
  if (retry.max_attempts < 1) throw Error("retry attempts must be >= 1");
}

std::unique_ptr<ChatBackend> make_backend(const AgentConfig& config) {
  if (config.backend == BackendKind::kScripted) {
    if (config.transcript.empty()) {
      throw Error("scripted backend needs a transcript file");
    }
    return std::make_unique<ScriptedBackend>(
        read_transcript_file(config.transcript));
  }
  HttpBackendConfig http;
  http.endpoint = config.endpoint;
  if (const char* key = std::getenv(kApiKeyEnv)) http.api_key = key;
  return std::make_unique<HttpBackend>(std::move(http));
}

AgentConfig agent_config_from_json(const ordered_json& j, AgentConfig base) {
  if (!j.is_object()) throw ParseError("agent config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    auto fail = [&](std::string_view what) {
      throw ParseError(fmt::format("agent config: '{}' must be {}", key, what));
    };
    if (key == "max_iterations") {
      if (!value.is_number_integer()) fail("an integer");
      base.max_iterations = value.get<int>();
    } else if (key == "llm_temperature") {
      if (!value.is_number()) fail("a number");
      base.llm_temperature = value.get<double>();
    } else if (key == "backend") {
      if (value == "http") {
        base.backend = BackendKind::kHttp;
      } else if (value == "scripted") {
        base.backend = BackendKind::kScripted;
      } else {
        fail("\"http\" or \"scripted\"");
      }
    } else if (key == "endpoint") {
      if (!value.is_string()) fail("a string");
      base.endpoint = value.get<std::string>();
    } else if (key == "model") {
      if (!value.is_string()) fail("a string");
      base.model = value.get<std::string>();
    } else if (key == "transcript") {
      if (!value.is_string()) fail("a string");
      base.transcript = value.get<std::string>();
    } else if (key == "stop_sequences") {
      if (!value.is_array()) fail("a list of strings");
      base.stop_sequences.clear();
      for (const auto& s : value) {
        if (!s.is_string()) fail("a list of strings");
        base.stop_sequences.push_back(s.get<std::string>());
      }
    } else {
      throw ParseError(fmt::format("agent config: unknown key '{}'", key));
    }
  }
  base.validate();
  return base;
}

ordered_json agent_config_to_json(const AgentConfig& config) {
  ordered_json j;
  j["max_iterations"] = config.max_iterations;
  j["llm_temperature"] = config.llm_temperature;
  j["backend"] = config.backend == BackendKind::kHttp ? "http" : "scripted";
  j["endpoint"] = config.endpoint;
  j["model"] = config.model;
  j["transcript"] = config.transcript.string();
  j["stop_sequences"] = config.stop_sequences;
  return j;
}

namespace {

constexpr std::string_view kNoBlob =
    "no action blob found; respond with a JSON blob containing action and "
    "action_input";

// End index (inclusive) of the JSON object starting at text[start], or npos
// when the braces never balance.
std::size_t matching_brace(std::string_view text, std::size_t start) {
  int depth = 0;
  bool in_string = false;
  bool escaped = false;
  for (std::size_t i = start; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      if (escaped) {
        escaped = false;
      } else if (c == '\\') {
        escaped = true;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '{') {
      ++depth;
    } else if (c == '}') {
      if (--depth == 0) return i;
    }
  }
  return std::string_view::npos;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

std::string clean_thought(std::string_view text) {
  text = detail::trim(text);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::string_view suffix : {"```json", "```JSON", "```", "Action:"}) {
      if (ends_with(text, suffix)) {
        text.remove_suffix(suffix.size());
        text = detail::trim(text);
        changed = true;
      }
    }
  }
  if (text.substr(0, 8) == "Thought:") text = detail::trim(text.substr(8));
  return std::string(text);
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

AgentAction to_action(const ordered_json& blob) {
  if (!blob["action"].is_string()) {
    return ActionError{"\"action\" must be a string naming a tool or "
                       "\"Final Answer\""};
  }
  const std::string name = blob["action"].get<std::string>();
  const ordered_json& input = blob["action_input"];
  if (lower(name) == "final answer") {
    if (!input.is_object()) {
      return ActionError{
          "the Final Answer action_input must be an object mapping cluster "
          "names to lists of device names"};
    }
    try {
      return FinalAnswer{constraints_from_json(input)};
    } catch (const ParseError& e) {
      return ActionError{fmt::format("invalid Final Answer: {}", e.what())};
    }
  }
  auto tool = tool_from_string(name);
  if (!tool) {
    std::vector<std::string_view> names;
    for (const ToolDescriptor& t : list_tools()) names.push_back(to_string(t.name));
    return ActionError{fmt::format(
        "unknown action '{}'; valid actions are \"Final Answer\", {}", name,
        fmt::join(names, ", "))};
  }
  try {
    return make_tool_call(*tool, input);
  } catch (const ParseError& e) {
    return ActionError{e.what()};
  }
}

// Truncates at the first stop sequence, as a server honouring `stop` would.
std::string apply_stop(std::string response,
                       const std::vector<std::string>& stops) {
  std::size_t cut = response.size();
  for (const std::string& s : stops) {
    if (s.empty()) continue;
    cut = std::min(cut, response.find(s));
  }
  response.resize(cut);
  return response;
}

std::string call_with_retry(ChatBackend& backend, const ChatRequest& request,
                            const RetryPolicy& policy) {
  for (int attempt = 1;; ++attempt) {
    try {
      return backend.complete(request);
    } catch (const BackendError& e) {
      if (!e.retryable() || attempt >= policy.max_attempts) throw;
      const auto delay = policy.delay_before(attempt + 1);
      if (policy.sleep) {
        policy.sleep(delay);
      } else {
        std::this_thread::sleep_for(delay);
      }
    }
  }
}

// Executes one parsed action. Returns no observation only for a valid
// Final Answer.
std::optional<Observation> act(Session& session, const AgentAction& action,
                               std::vector<LogRecord>* log) {
  if (const auto* call = std::get_if<ToolCall>(&action)) {
    return invoke(session, *call, log);
  }
  if (const auto* answer = std::get_if<FinalAnswer>(&action)) {
    ValidationReport report =
        validate_constraints(session.netlist(), answer->constraints);
    if (report.valid()) return std::nullopt;
    return Observation{
        "Error: the Final Answer is not valid:\n" + report.to_string() +
            "Fix these issues and give the Final Answer again.",
        false};
  }
  return Observation{"Error: " + std::get<ActionError>(action).message, false};
}

}  // namespace

ParsedAction parse_action(std::string_view llm_output) {
  std::size_t best_start = std::string_view::npos;
  ordered_json best;
  std::size_t i = 0;
  while (i < llm_output.size()) {
    if (llm_output[i] != '{') {
      ++i;
      continue;
    }
    const std::size_t end = matching_brace(llm_output, i);
    if (end == std::string_view::npos) {
      ++i;
      continue;
    }
    try {
      ordered_json j =
          detail::parse_json_strict(llm_output.substr(i, end - i + 1));
      if (j.is_object() && j.contains("action") && j.contains("action_input")) {
        best_start = i;
        best = std::move(j);
        i = end + 1;
        continue;
      }
    } catch (const ParseError&) {
    }
    ++i;
  }
  if (best_start == std::string_view::npos) {
    return ParsedAction{clean_thought(llm_output), ActionError{std::string(kNoBlob)}};
  }
  return ParsedAction{clean_thought(llm_output.substr(0, best_start)),
                      to_action(best)};
}

std::string build_initial_prompt(const Session& session,
                                 const GuidanceConfig& guidance) {
  if (guidance.guidance_text.empty()) throw Error("guidance text is empty");
  std::string out = guidance.guidance_text;
  if (out.back() != '\n') out += '\n';
  out += '\n';
  out += netlist_topology_prompt(session.netlist(), session.current(),
                                 session.current_score());
  if (session.layout() != nullptr) {
    out += '\n';
    out += physical_layout_prompt(*session.layout());
  }
  if (session.routability() != nullptr) {
    out += '\n';
    out += routability_prompt(*session.routability());
  }
  out += '\n';
  out += tools_prompt();
  out += '\n';
  out += react_format_prompt();
  return out;
}

std::string_view to_string(AgentOutcome outcome) {
  switch (outcome) {
    case AgentOutcome::kFinalAnswer:
      return "final_answer";
    case AgentOutcome::kIterationCap:
      return "iteration_cap";
    case AgentOutcome::kBackendError:
      return "backend_error";
  }
  return "unknown";
}

AgentTrace run_agent(Session& session, ChatBackend& backend,
                     const AgentConfig& config, const GuidanceConfig& guidance,
                     std::vector<LogRecord>* log) {
  config.validate();
  AgentTrace trace;
  ChatRequest request;
  request.model = config.model;
  request.temperature = config.llm_temperature;
  request.stop = config.stop_sequences;
  request.messages.push_back({"system", build_initial_prompt(session, guidance)});
  request.messages.push_back(
      {"user", "Begin. Respond with one Thought and one Action."});

  trace.outcome = AgentOutcome::kIterationCap;
  for (int step = 0; step < config.max_iterations; ++step) {
    std::string response;
    try {
      response = apply_stop(call_with_retry(backend, request, config.retry),
                            config.stop_sequences);
    } catch (const BackendError& e) {
      trace.outcome = AgentOutcome::kBackendError;
      trace.error = e.what();
      break;
    }
    ParsedAction parsed = parse_action(response);
    AgentStep s{response, std::move(parsed.thought), std::move(parsed.action),
                std::nullopt};
    s.observation = act(session, s.action, log);
    if (!s.observation) {
      const auto& answer = std::get<FinalAnswer>(s.action);
      trace.final_constraints = answer.constraints;
      trace.final_score = session.score(answer.constraints).total;
      trace.outcome = AgentOutcome::kFinalAnswer;
      trace.steps.push_back(std::move(s));
      break;
    }
    request.messages.push_back({"assistant", response});
    request.messages.push_back({"user", "Observation: " + s.observation->text});
    trace.steps.push_back(std::move(s));
  }
  const Snapshot& best = session.history()[session.best_index()];
  trace.best_constraints = best.constraints;
  trace.best_score = best.score.total;
  return trace;
}

namespace {

ordered_json action_to_json(const AgentAction& action) {
  ordered_json j;
  if (const auto* call = std::get_if<ToolCall>(&action)) {
    j["type"] = "tool";
    j["tool"] = std::string(to_string(call->tool));
    j["arguments"] = call->arguments;
  } else if (const auto* answer = std::get_if<FinalAnswer>(&action)) {
    j["type"] = "final_answer";
    j["constraints"] = constraints_to_json(answer->constraints);
  } else {
    j["type"] = "invalid";
    j["message"] = std::get<ActionError>(action).message;
  }
  return j;
}

AgentAction action_from_json(const ordered_json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "tool") {
    auto tool = tool_from_string(j.at("tool").get<std::string>());
    if (!tool) throw ParseError("trace names an unknown tool");
    return ToolCall{*tool, j.at("arguments")};
  }
  if (type == "final_answer") {
    return FinalAnswer{constraints_from_json(j.at("constraints"))};
  }
  if (type == "invalid") return ActionError{j.at("message").get<std::string>()};
  throw ParseError("unknown action type '" + type + "' in trace");
}

}  // namespace

ordered_json trace_to_json(const AgentTrace& trace) {
  ordered_json j;
  j["outcome"] = std::string(to_string(trace.outcome));
  j["steps"] = ordered_json::array();
  for (const AgentStep& s : trace.steps) {
    ordered_json step;
    step["response"] = s.response;
    step["thought"] = s.thought;
    step["action"] = action_to_json(s.action);
    if (s.observation) {
      step["observation"] = {{"ok", s.observation->ok},
                             {"text", s.observation->text}};
    } else {
      step["observation"] = nullptr;
    }
    j["steps"].push_back(std::move(step));
  }
  j["final_constraints"] = trace.final_constraints
                               ? constraints_to_json(*trace.final_constraints)
                               : ordered_json(nullptr);
  j["final_score"] =
      trace.final_score ? ordered_json(*trace.final_score) : ordered_json(nullptr);
  j["best_constraints"] = constraints_to_json(trace.best_constraints);
  j["best_score"] = trace.best_score;
  j["error"] = trace.error;
  return j;
}

std::string serialize_trace(const AgentTrace& trace) {
  return trace_to_json(trace).dump(2) + "\n";
}

AgentTrace parse_trace(std::string_view text) {
  const ordered_json j = detail::parse_json_strict(text);
  AgentTrace trace;
  try {
    const std::string outcome = j.at("outcome").get<std::string>();
    if (outcome == "final_answer") {
      trace.outcome = AgentOutcome::kFinalAnswer;
    } else if (outcome == "iteration_cap") {
      trace.outcome = AgentOutcome::kIterationCap;
    } else if (outcome == "backend_error") {
      trace.outcome = AgentOutcome::kBackendError;
    } else {
      throw ParseError("unknown outcome '" + outcome + "'");
    }
    for (const ordered_json& s : j.at("steps")) {
      AgentStep step{s.at("response").get<std::string>(),
                     s.at("thought").get<std::string>(),
                     action_from_json(s.at("action")), std::nullopt};
      const ordered_json& obs = s.at("observation");
      if (!obs.is_null()) {
        step.observation = Observation{obs.at("text").get<std::string>(),
                                       obs.at("ok").get<bool>()};
      }
      trace.steps.push_back(std::move(step));
    }
    if (!j.at("final_constraints").is_null()) {
      trace.final_constraints = constraints_from_json(j["final_constraints"]);
    }
    if (!j.at("final_score").is_null()) {
      trace.final_score = j["final_score"].get<double>();
    }
    trace.best_constraints = constraints_from_json(j.at("best_constraints"));
    trace.best_score = j.at("best_score").get<double>();
    trace.error = j.value("error", "");
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed trace: ") + e.what());
  }
  return trace;
}

ReplayResult replay_trace(Session initial, const AgentTrace& trace) {
  ReplayResult result;
  auto fail = [&](std::size_t step, std::string detail) {
    result.pass = false;
    result.divergent_step = step;
    result.detail = fmt::format("step {}: {}", step, detail);
    return result;
  };
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const AgentStep& s = trace.steps[i];
    ++result.steps;
    ParsedAction parsed = parse_action(s.response);
    if (parsed.thought != s.thought || !(parsed.action == s.action)) {
      return fail(i + 1, "recorded action does not match the response text");
    }
    std::optional<Observation> got = act(initial, s.action, nullptr);
    if (got != s.observation) {
      return fail(i + 1,
                  fmt::format("observation differs\n--- trace\n{}\n--- replay\n{}",
                              s.observation ? s.observation->text : "(none)",
                              got ? got->text : "(none)"));
    }
  }
  if (trace.outcome == AgentOutcome::kFinalAnswer) {
    if (!trace.final_constraints || !trace.final_score) {
      return fail(result.steps, "final answer outcome without constraints");
    }
    const double score = initial.score(*trace.final_constraints).total;
    if (score != *trace.final_score) {
      return fail(result.steps,
                  fmt::format("final score is {} but the trace says {}", score,
                              *trace.final_score));
    }
  }
  const Snapshot& best = initial.history()[initial.best_index()];
  if (best.score.total != trace.best_score ||
      !(best.constraints == trace.best_constraints)) {
    return fail(result.steps, "best-of-history result differs");
  }
  return result;
}

}  // namespace cellclust
