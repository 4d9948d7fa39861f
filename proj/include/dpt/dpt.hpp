#pragma once

#include "dpt/adversary.hpp"
#include "dpt/amplify.hpp"
#include "dpt/certify.hpp"
#include "dpt/codec.hpp"
#include "dpt/combinatorics.hpp"
#include "dpt/core.hpp"
#include "dpt/error.hpp"
#include "dpt/experiment.hpp"
#include "dpt/io.hpp"
#include "dpt/rational.hpp"
#include "dpt/rng.hpp"
#include "dpt/spectral.hpp"
#include "dpt/tester.hpp"
#include "dpt/testgraph.hpp"
