#pragma once

#include "spcluster/clustering.hpp"
#include "spcluster/datagen.hpp"
#include "spcluster/errors.hpp"
#include "spcluster/hopfield.hpp"
#include "spcluster/paper_fixture.hpp"
#include "spcluster/parallel.hpp"
#include "spcluster/spchart.hpp"
