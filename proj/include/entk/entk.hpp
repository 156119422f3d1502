#pragma once

#include "entk/analysis.hpp"
#include "entk/definitions.hpp"
#include "entk/environment.hpp"
#include "entk/error.hpp"
#include "entk/frechet.hpp"
#include "entk/geometry.hpp"
#include "entk/homotopy.hpp"
#include "entk/pipeline.hpp"
#include "entk/relations.hpp"
#include "entk/report.hpp"
#include "entk/scenario_io.hpp"
#include "entk/visibility.hpp"
#include "entk/word.hpp"
#include "entk/workspace_map.hpp"
