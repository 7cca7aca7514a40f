#pragma once

#include "fqrc/core.hpp"
#include "fqrc/data.hpp"
#include "fqrc/eval.hpp"
#include "fqrc/infer.hpp"
#include "fqrc/knn.hpp"
#include "fqrc/learn.hpp"
#include "fqrc/model_io.hpp"
#include "fqrc/rank.hpp"
#include "fqrc/report.hpp"
