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

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <regex>

#include <fmt/format.h>

#include "cellclust/agent.hpp"

namespace cellclust {

using nlohmann::ordered_json;

HttpBackend::HttpBackend(HttpBackendConfig config) : config_(std::move(config)) {
  static const std::regex url(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(config_.endpoint, m, url)) {
    throw Error(fmt::format("invalid endpoint URL '{}'", config_.endpoint));
  }
  base_ = m[1].str();
  path_ = m[2].matched ? m[2].str() : "/";
}

std::string HttpBackend::complete(const ChatRequest& request) {
  httplib::Client client(base_);
  const auto timeout = static_cast<time_t>(config_.timeout.count());
  client.set_connection_timeout(timeout, 0);
  client.set_read_timeout(timeout, 0);
  client.set_write_timeout(timeout, 0);
  if (!config_.api_key.empty()) {
    client.set_bearer_token_auth(config_.api_key);
  }
  const std::string body = chat_request_to_json(request).dump();
  httplib::Result res = client.Post(path_, body, "application/json");
  if (!res) {
    throw BackendError(
        fmt::format("request to {} failed: {}", config_.endpoint,
                    httplib::to_string(res.error())),
        /*retryable=*/true);
  }
  if (res->status != 200) {
    const bool retryable = res->status == 429 || res->status >= 500;
    throw BackendError(fmt::format("HTTP {} from {}: {}", res->status,
                                   config_.endpoint, res->body.substr(0, 500)),
                       retryable);
  }
  ordered_json reply;
  try {
    reply = ordered_json::parse(res->body);
    return reply.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw BackendError(
        fmt::format("unexpected chat-completions response: {}", e.what()),
        /*retryable=*/false);
  }
}

}  // namespace cellclust
