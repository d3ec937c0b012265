#pragma once

#include "bucketrank/bucket_order.hpp"
#include "bucketrank/combinatorics.hpp"
#include "bucketrank/consensus.hpp"
#include "bucketrank/distortion.hpp"
#include "bucketrank/distribution.hpp"
#include "bucketrank/errors.hpp"
#include "bucketrank/io.hpp"
#include "bucketrank/marginals.hpp"
#include "bucketrank/ranking.hpp"
#include "bucketrank/search.hpp"
#include "bucketrank/synth.hpp"
