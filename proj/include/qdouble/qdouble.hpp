// Copyright 2026 The qdouble Authors
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

#include "qdouble/braiding.hpp"
#include "qdouble/exact_irreps.hpp"
#include "qdouble/export.hpp"
#include "qdouble/group.hpp"
#include "qdouble/irreps.hpp"
#include "qdouble/lattice.hpp"
#include "qdouble/lattice_ops.hpp"
#include "qdouble/linalg.hpp"
#include "qdouble/local_operator.hpp"
#include "qdouble/multiplet.hpp"
#include "qdouble/quantum_double.hpp"
#include "qdouble/ribbon.hpp"
#include "qdouble/state_vector.hpp"
#include "qdouble/suites.hpp"
