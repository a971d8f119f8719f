// Copyright 2026 The mpsqc Authors
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

#include "mpsqc/error.hpp"
#include "mpsqc/sim/gate.hpp"
#include "mpsqc/sim/state_vector.hpp"
#include "mpsqc/mps/mps_state.hpp"
#include "mpsqc/encoding.hpp"
#include "mpsqc/ansatz.hpp"
#include "mpsqc/training.hpp"
#include "mpsqc/metrics.hpp"
#include "mpsqc/data_io.hpp"
#include "mpsqc/pipeline.hpp"
#include "mpsqc/serialization.hpp"
