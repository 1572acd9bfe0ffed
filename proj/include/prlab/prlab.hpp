#pragma once

#include "prlab/asymptotics.hpp"
#include "prlab/config.hpp"
#include "prlab/error.hpp"
#include "prlab/experiment.hpp"
#include "prlab/generators.hpp"
#include "prlab/graph.hpp"
#include "prlab/io.hpp"
#include "prlab/metrics.hpp"
#include "prlab/numeric.hpp"
#include "prlab/pagerank.hpp"
#include "prlab/report.hpp"
#include "prlab/seed.hpp"
#include "prlab/spectral.hpp"
