/*
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "lacent/dense_oracle.hpp"
#include "lacent/error.hpp"
#include "lacent/eval.hpp"
#include "lacent/exact.hpp"
#include "lacent/generators.hpp"
#include "lacent/graph.hpp"
#include "lacent/params.hpp"
#include "lacent/push.hpp"
#include "lacent/rng.hpp"
#include "lacent/serialize.hpp"
