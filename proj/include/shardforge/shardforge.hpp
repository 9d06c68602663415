#pragma once

// Umbrella header: exact shards of reflection arrangements and real bricks /
// shard modules of symmetrizable preprojective algebras.

#include "shardforge/cartan.hpp"
#include "shardforge/cone.hpp"
#include "shardforge/demos.hpp"
#include "shardforge/errors.hpp"
#include "shardforge/field_tower.hpp"
#include "shardforge/json_io.hpp"
#include "shardforge/linalg.hpp"
#include "shardforge/numeric.hpp"
#include "shardforge/parallel.hpp"
#include "shardforge/rank_two.hpp"
#include "shardforge/reflection_functors.hpp"
#include "shardforge/root_poset.hpp"
#include "shardforge/shard_enum.hpp"
#include "shardforge/species.hpp"
#include "shardforge/stability.hpp"
