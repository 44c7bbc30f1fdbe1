#pragma once

#include "ripramsey/clique.hpp"
#include "ripramsey/coloring.hpp"
#include "ripramsey/column_matrix.hpp"
#include "ripramsey/common.hpp"
#include "ripramsey/devore.hpp"
#include "ripramsey/kl_bound.hpp"
#include "ripramsey/pipeline.hpp"
#include "ripramsey/ramsey.hpp"
#include "ripramsey/rip.hpp"
