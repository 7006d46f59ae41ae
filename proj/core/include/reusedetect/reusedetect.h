// Copyright 2026 The reusedetect Authors. All Rights Reserved.
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

#include "reusedetect/birthmark.h"
#include "reusedetect/call_graph.h"
#include "reusedetect/detection.h"
#include "reusedetect/error.h"
#include "reusedetect/evaluation.h"
#include "reusedetect/lifting.h"
#include "reusedetect/mbp.h"
#include "reusedetect/program_ir.h"
#include "reusedetect/report.h"
#include "reusedetect/similarity.h"
