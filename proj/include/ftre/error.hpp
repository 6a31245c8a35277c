// Copyright 2026 The ftre Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace ftre {

/// Broad failure categories. Each maps to a distinct CLI exit code.
enum class ErrorKind {
    internal,
    parse,
    config,
    domain,
    validation,
    unsupported,
    infeasible_budget,
    layout,
    routing,
    io,
};

inline int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::infeasible_budget:
            return 2;
        case ErrorKind::parse:
            return 3;
        case ErrorKind::config:
            return 4;
        case ErrorKind::layout:
        case ErrorKind::routing:
            return 5;
        case ErrorKind::domain:
        case ErrorKind::validation:
            return 6;
        case ErrorKind::unsupported:
            return 7;
        case ErrorKind::io:
            return 8;
        case ErrorKind::internal:
            return 1;
    }
    return 1;
}

inline const char *error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::internal:
            return "internal";
        case ErrorKind::parse:
            return "parse";
        case ErrorKind::config:
            return "config";
        case ErrorKind::domain:
            return "domain";
        case ErrorKind::validation:
            return "validation";
        case ErrorKind::unsupported:
            return "unsupported";
        case ErrorKind::infeasible_budget:
            return "infeasible-budget";
        case ErrorKind::layout:
            return "layout";
        case ErrorKind::routing:
            return "routing";
        case ErrorKind::io:
            return "io";
    }
    return "internal";
}

class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &message) : std::runtime_error(message), kind_(kind) {
    }
    ErrorKind kind() const noexcept {
        return kind_;
    }

   private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string &message) {
    throw Error(kind, message);
}

}  // namespace ftre
