#pragma once

#include <string>
#include <vector>

// Published benchmark rows: printed Score, BOR, TF and PR.
namespace ptzsim::test {

struct PublishedRow {
  std::string tracker;
  std::string prediction;
  double score;
  double bor;
  double tf;
  double pr;
};

// Execution ratio 0, in published rank order.
inline const std::vector<PublishedRow> kTableExec0 = {
    {"ASMS", "none", 0.65, 0.42, 0.30, 0.92},       {"DPCF", "none", 0.71, 0.40, 0.38, 0.80},
    {"TLD", "none", 0.72, 0.56, 0.57, 0.41},        {"DAT", "none", 0.72, 0.35, 0.31, 0.77},
    {"Staple+", "none", 0.72, 0.37, 0.35, 1.00},    {"Staple", "none", 0.72, 0.36, 0.34, 1.00},
    {"KF-EBT", "none", 0.74, 0.36, 0.37, 0.98},     {"DSST", "none", 0.78, 0.38, 0.48, 0.92},
    {"STRUCK", "none", 0.85, 0.31, 0.50, 0.94},     {"SKCF", "none", 0.87, 0.30, 0.52, 0.91},
    {"KCF", "none", 0.88, 0.28, 0.51, 0.95},        {"SWCF", "none", 0.88, 0.31, 0.55, 0.75},
    {"MIL", "none", 0.89, 0.28, 0.52, 0.85},        {"DFST", "none", 0.90, 0.27, 0.53, 0.93},
    {"BOOSTING", "none", 0.92, 0.26, 0.54, 0.62},   {"MEDIANFLOW", "none", 0.98, 0.27, 0.65, 0.95},
    {"SRDCF", "none", 1.01, 0.73, 0.97, 0.14},      {"NCC", "none", 1.03, 0.24, 0.69, 0.90},
    {"CTSE", "none", 1.21, 0.04, 0.74, 0.44},
};

// Execution ratio 1, in published rank order.
inline const std::vector<PublishedRow> kTableExec1 = {
    {"ASMS", "none", 0.64, 0.43, 0.29, 0.88},       {"Staple", "none", 0.65, 0.40, 0.25, 0.35},
    {"KF-EBT", "none", 0.72, 0.38, 0.36, 0.71},     {"DAT", "none", 0.75, 0.36, 0.39, 0.21},
    {"TLD", "none", 0.83, 0.70, 0.77, 0.13},        {"DSST", "none", 0.85, 0.32, 0.51, 0.48},
    {"KCF", "none", 0.85, 0.30, 0.49, 0.63},        {"STRUCK", "none", 0.85, 0.30, 0.49, 0.15},
    {"SKCF", "none", 0.86, 0.30, 0.50, 0.90},       {"BOOSTING", "none", 0.89, 0.29, 0.53, 0.54},
    {"Staple+", "none", 0.91, 0.34, 0.62, 0.08},    {"SRDCF", "none", 0.92, 0.73, 0.88, 0.03},
    {"DPCF", "none", 0.93, 0.34, 0.65, 0.08},       {"DFST", "none", 0.95, 0.31, 0.65, 0.09},
    {"MEDIANFLOW", "none", 0.96, 0.27, 0.62, 0.85}, {"SWCF", "none", 1.01, 0.20, 0.61, 0.23},
    {"NCC", "none", 1.03, 0.24, 0.69, 0.88},        {"MIL", "none", 1.04, 0.20, 0.66, 0.15},
    {"CTSE", "none", 1.22, 0.07, 0.79, 0.11},
};

// Execution ratio 1 with each prediction model.
inline const std::vector<PublishedRow> kTablePrediction = {
    {"KCF", "none", 0.85, 0.30, 0.49, 0.63},      {"KCF", "model1", 1.06, 0.20, 0.69, 0.14},
    {"KCF", "model2", 0.97, 0.24, 0.61, 0.15},    {"KCF", "model3", 1.05, 0.24, 0.73, 0.12},
    {"BOOSTING", "none", 0.89, 0.29, 0.53, 0.54}, {"BOOSTING", "model1", 1.03, 0.26, 0.71, 0.12},
    {"BOOSTING", "model2", 1.10, 0.17, 0.72, 0.12}, {"BOOSTING", "model3", 1.08, 0.18, 0.70, 0.11},
};

}  // namespace ptzsim::test
