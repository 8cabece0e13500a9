/*
 * Copyright 2026 The Tomaco Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// JSON-over-HTTP surface of the registry: collections, services,
// ontologies, matching and liveness.

#ifndef TOMACO_HTTP_API_H_
#define TOMACO_HTTP_API_H_

#include <string>
#include <string_view>

#include "tomaco/matching_engine.h"
#include "tomaco/registry_service.h"

namespace httplib {
class Server;
}  // namespace httplib

namespace tomaco {

// Weight and rating threshold arriving over HTTP are clamped into this range.
inline constexpr double kApiMinParameter = 0.1;
inline constexpr double kApiMaxParameter = 0.9;

struct MatchRequest {
  std::string collection_id;
  Query query;
  MatchConfig config;
};

// Parses a POST /match body. Throws RegistryError(kValidation) naming the
// offending field.
MatchRequest ParseMatchRequest(std::string_view body);

// Installs every endpoint on `server`; `registry` must outlive it.
void RegisterHttpApi(httplib::Server& server, Registry& registry);

}  // namespace tomaco

#endif  // TOMACO_HTTP_API_H_
