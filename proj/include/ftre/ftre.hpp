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

#include "ftre/architecture.hpp"
#include "ftre/budget.hpp"
#include "ftre/circuit.hpp"
#include "ftre/driver.hpp"
#include "ftre/error.hpp"
#include "ftre/ingest.hpp"
#include "ftre/layout.hpp"
#include "ftre/linalg.hpp"
#include "ftre/pipeline.hpp"
#include "ftre/primitive_compiler.hpp"
#include "ftre/report.hpp"
#include "ftre/stage1.hpp"
#include "ftre/synthesis.hpp"
#include "ftre/synthetic.hpp"
