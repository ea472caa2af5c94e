// Copyright 2026 The edplab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "edplab/version.hpp"
#include "edplab/linalg.hpp"
#include "edplab/rng.hpp"
#include "edplab/parallel.hpp"
#include "edplab/special_functions.hpp"
#include "edplab/random_states.hpp"
#include "edplab/criteria.hpp"
#include "edplab/protocols.hpp"
#include "edplab/stats.hpp"
#include "edplab/bounds.hpp"
#include "edplab/lemmas.hpp"
#include "edplab/scaling.hpp"
