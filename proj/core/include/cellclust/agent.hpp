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

// ReAct agent loop: the model answers with a Thought and a JSON action blob,
// the named tool runs against the session and its output is fed back as an
// Observation, until the model gives a valid Final Answer or the iteration
// cap is hit.

#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "cellclust/cluster.hpp"
#include "cellclust/error.hpp"
#include "cellclust/prompts.hpp"
#include "cellclust/tools.hpp"

namespace cellclust {

inline constexpr const char* kApiKeyEnv = "CELLCLUST_LLM_API_KEY";

struct ChatMessage {
  std::string role;
  std::string content;

  bool operator==(const ChatMessage&) const = default;
};

struct ChatRequest {
  std::string model;
  std::vector<ChatMessage> messages;
  double temperature = 0.1;
  std::vector<std::string> stop;
};

/// OpenAI-compatible chat-completions request body.
nlohmann::ordered_json chat_request_to_json(const ChatRequest& request);

class BackendError : public Error {
 public:
  BackendError(const std::string& message, bool retryable)
      : Error(message), retryable_(retryable) {}
  bool retryable() const { return retryable_; }

 private:
  bool retryable_;
};

/// A chat-completion source. Implementations must be safe to call from
/// several agent runs at once.
class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  /// Returns the assistant message text or throws `BackendError`.
  virtual std::string complete(const ChatRequest& request) = 0;
};

/// Replays canned responses in order. Running out is a non-retryable error.
class ScriptedBackend : public ChatBackend {
 public:
  explicit ScriptedBackend(std::vector<std::string> responses);

  std::string complete(const ChatRequest& request) override;
  std::size_t calls() const;

 private:
  mutable std::mutex mu_;
  std::vector<std::string> responses_;
  std::size_t next_ = 0;
};

/// JSON lines; each line is either a JSON string or an object with a
/// "response" string.
std::vector<std::string> parse_transcript(std::string_view text);
std::vector<std::string> read_transcript_file(const std::filesystem::path& path);
std::string serialize_transcript(const std::vector<std::string>& responses);

struct HttpBackendConfig {
  /// Full URL of the chat-completions endpoint, e.g.
  /// https://api.openai.com/v1/chat/completions.
  std::string endpoint;
  std::string api_key;
  std::chrono::seconds timeout{120};
};

/// POSTs to an OpenAI-compatible endpoint. Connection failures, 429 and 5xx
/// are retryable; other HTTP errors are not.
class HttpBackend : public ChatBackend {
 public:
  explicit HttpBackend(HttpBackendConfig config);
  std::string complete(const ChatRequest& request) override;

 private:
  HttpBackendConfig config_;
  std::string base_;  // scheme://host[:port]
  std::string path_;
};

/// Bounded retries with exponential backoff around one backend call.
struct RetryPolicy {
  int max_attempts = 3;
  std::chrono::milliseconds initial_delay{500};
  double multiplier = 2.0;
  /// Defaults to std::this_thread::sleep_for.
  std::function<void(std::chrono::milliseconds)> sleep;

  /// Delay before attempt `attempt` (2-based: the first retry).
  std::chrono::milliseconds delay_before(int attempt) const;
};

enum class BackendKind { kHttp, kScripted };

struct AgentConfig {
  int max_iterations = 15;
  double llm_temperature = 0.1;
  BackendKind backend = BackendKind::kScripted;
  std::string endpoint = "https://api.openai.com/v1/chat/completions";
  std::string model = "gpt-3.5-turbo-16k";
  std::filesystem::path transcript;
  std::vector<std::string> stop_sequences = {"Observation:"};
  RetryPolicy retry;

  void validate() const;
};

/// Scripted backends load `config.transcript`; HTTP backends read the bearer
/// credential from the CELLCLUST_LLM_API_KEY environment variable.
std::unique_ptr<ChatBackend> make_backend(const AgentConfig& config);

AgentConfig agent_config_from_json(const nlohmann::ordered_json& j,
                                   AgentConfig base = {});
nlohmann::ordered_json agent_config_to_json(const AgentConfig& config);

struct FinalAnswer {
  ClusterConstraints constraints;

  bool operator==(const FinalAnswer&) const = default;
};

/// The model output could not be turned into an action. `message` is fed
/// back to the model.
struct ActionError {
  std::string message;

  bool operator==(const ActionError&) const = default;
};

using AgentAction = std::variant<ToolCall, FinalAnswer, ActionError>;

struct ParsedAction {
  std::string thought;
  AgentAction action;
};

/// Extracts the last JSON object holding both "action" and "action_input"
/// (code fences are tolerated). The thought is the text before that blob
/// with any "Thought:" / "Action:" labels and fence markers removed.
ParsedAction parse_action(std::string_view llm_output);

/// Guidance, topology, optional layout and routability sections, then the
/// tools and the response format.
std::string build_initial_prompt(const Session& session,
                                 const GuidanceConfig& guidance);

struct AgentStep {
  std::string response;
  std::string thought;
  AgentAction action;
  /// Absent for an accepted Final Answer.
  std::optional<Observation> observation;
};

enum class AgentOutcome { kFinalAnswer, kIterationCap, kBackendError };

std::string_view to_string(AgentOutcome outcome);

struct AgentTrace {
  std::vector<AgentStep> steps;
  AgentOutcome outcome = AgentOutcome::kIterationCap;
  /// Set only for kFinalAnswer, and then always valid.
  std::optional<ClusterConstraints> final_constraints;
  std::optional<double> final_score;
  /// Best snapshot of the session history, reported for every outcome.
  ClusterConstraints best_constraints;
  double best_score = 0.0;
  std::string error;
};

/// Runs the loop against `session` (which receives every tool call). Tool
/// calls are appended to `log` when given.
AgentTrace run_agent(Session& session, ChatBackend& backend,
                     const AgentConfig& config, const GuidanceConfig& guidance,
                     std::vector<LogRecord>* log = nullptr);

nlohmann::ordered_json trace_to_json(const AgentTrace& trace);
/// Two-space indented JSON with a trailing newline.
std::string serialize_trace(const AgentTrace& trace);
AgentTrace parse_trace(std::string_view text);

/// Re-runs every recorded tool call of `trace` against `initial` and
/// compares the observations.
ReplayResult replay_trace(Session initial, const AgentTrace& trace);

}  // namespace cellclust
