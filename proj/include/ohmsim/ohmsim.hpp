/*
 * Copyright 2026 The ohmsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "ohmsim/channel/link.hpp"
#include "ohmsim/channel/virtual_channel.hpp"
#include "ohmsim/config.hpp"
#include "ohmsim/controller/address.hpp"
#include "ohmsim/controller/migration.hpp"
#include "ohmsim/controller/planar.hpp"
#include "ohmsim/controller/scheduler.hpp"
#include "ohmsim/devices/dram.hpp"
#include "ohmsim/devices/start_gap.hpp"
#include "ohmsim/devices/xpoint.hpp"
#include "ohmsim/experiment/run.hpp"
#include "ohmsim/metrics/ber.hpp"
#include "ohmsim/metrics/cost.hpp"
#include "ohmsim/metrics/energy.hpp"
#include "ohmsim/metrics/report.hpp"
#include "ohmsim/optical/fraction.hpp"
#include "ohmsim/optical/light.hpp"
#include "ohmsim/optical/power.hpp"
#include "ohmsim/optical/wom.hpp"
#include "ohmsim/platform.hpp"
#include "ohmsim/sim/engine.hpp"
#include "ohmsim/sim/time.hpp"
#include "ohmsim/system.hpp"
#include "ohmsim/workload/request.hpp"
#include "ohmsim/workload/synthetic.hpp"
#include "ohmsim/workload/trace.hpp"
