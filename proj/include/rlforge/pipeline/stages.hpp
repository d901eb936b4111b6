// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "rlforge/pipeline/config.hpp"

namespace rlforge::pipeline {

// Human-readable summary lines of a finished stage.
using StageSummary = std::vector<std::string>;

// scene.json, radar/, camera/gt/, camera/seg/ (perturbed labels with
// emulated scores), truth/truth.jsonl.
StageSummary run_simulate(const PipelineConfig& config);
// process/: RA image and CFAR target list per radar frame.
StageSummary run_process(const PipelineConfig& config);
// dataset/: artifacts, manifest.jsonl, skips.jsonl.
StageSummary run_fuse(const PipelineConfig& config);
// eval/: segmentation AP table (metrics.json, metrics.txt) and campaign
// tallies of the emitted annotations (campaign.json).
StageSummary run_evaluate(const PipelineConfig& config);
// report/: campaign summary from the manifest and the evaluation.
StageSummary run_report(const PipelineConfig& config);

StageSummary run_stage(const std::string& name, const PipelineConfig& config);

}  // namespace rlforge::pipeline
