#pragma once

#include "tempo_bf/classify.hpp"
#include "tempo_bf/combine.hpp"
#include "tempo_bf/count.hpp"
#include "tempo_bf/edge_list.hpp"
#include "tempo_bf/enumerate.hpp"
#include "tempo_bf/generate.hpp"
#include "tempo_bf/graph.hpp"
#include "tempo_bf/instance.hpp"
#include "tempo_bf/oracle.hpp"
#include "tempo_bf/stream.hpp"
#include "tempo_bf/timestamp_index.hpp"
#include "tempo_bf/twin_index.hpp"
#include "tempo_bf/types.hpp"
#include "tempo_bf/wedge.hpp"
