use std::fmt;
use std::str::FromStr;

use super::{Capabilities, GraphContainer};
use crate::error::{GraphError, Result};
use crate::model::VertexId;

/// The API ablation configurations, each either built up from the required
/// pair or carved out of the full API.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ApiConfig {
    Min,
    MinDegree,
    MinEfficient,
    FullNoNumEdges,
    FullNoDegree,
    NoEarlyExit,
    NoParallelMap,
    FullNoParallelEarlyExit,
    Full,
}

impl ApiConfig {
    pub const ALL: [ApiConfig; 9] = [
        ApiConfig::Min,
        ApiConfig::MinDegree,
        ApiConfig::MinEfficient,
        ApiConfig::FullNoNumEdges,
        ApiConfig::FullNoDegree,
        ApiConfig::NoEarlyExit,
        ApiConfig::NoParallelMap,
        ApiConfig::FullNoParallelEarlyExit,
        ApiConfig::Full,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ApiConfig::Min => "min",
            ApiConfig::MinDegree => "min+degree",
            ApiConfig::MinEfficient => "min-efficient",
            ApiConfig::FullNoNumEdges => "full-num_edges",
            ApiConfig::FullNoDegree => "full-degree",
            ApiConfig::NoEarlyExit => "no-early-exit",
            ApiConfig::NoParallelMap => "no-parallel-map",
            ApiConfig::FullNoParallelEarlyExit => "full-parallel_map_early_exit",
            ApiConfig::Full => "full",
        }
    }

    /// The read capabilities this configuration exposes.
    pub fn capabilities(self) -> Capabilities {
        let full = Capabilities::FULL;
        let min = Capabilities {
            batch_updates: true,
            ..Capabilities::MIN
        };
        match self {
            ApiConfig::Min => min,
            ApiConfig::MinDegree => Capabilities { degree: true, ..min },
            ApiConfig::MinEfficient => Capabilities {
                degree: true,
                num_edges: true,
                ..min
            },
            ApiConfig::FullNoNumEdges => Capabilities {
                num_edges: false,
                ..full
            },
            ApiConfig::FullNoDegree => Capabilities {
                degree: false,
                ..full
            },
            ApiConfig::NoEarlyExit => Capabilities {
                map_early_exit: false,
                parallel_map_early_exit: false,
                ..full
            },
            ApiConfig::NoParallelMap => Capabilities {
                parallel_map: false,
                parallel_map_early_exit: false,
                ..full
            },
            ApiConfig::FullNoParallelEarlyExit => Capabilities {
                parallel_map_early_exit: false,
                ..full
            },
            ApiConfig::Full => full,
        }
    }

    /// This configuration applied to a container that offers `available`.
    pub fn restrict(self, available: Capabilities) -> Capabilities {
        self.capabilities().intersect(available)
    }
}

impl fmt::Display for ApiConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ApiConfig {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self> {
        ApiConfig::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = ApiConfig::ALL.iter().map(|c| c.name()).collect();
                GraphError::Config(format!("unknown API config '{s}' (expected one of: {})", names.join(", ")))
            })
    }
}

/// Read-only view of a container with some capabilities hidden.
pub struct Masked<'a, G: ?Sized> {
    inner: &'a G,
    caps: Capabilities,
}

/// Hides every capability not in `config`. Asking for a capability the
/// container lacks is a configuration error.
pub fn mask_capabilities<G: GraphContainer + ?Sized>(
    g: &G,
    config: Capabilities,
) -> Result<Masked<'_, G>> {
    let available = g.capabilities();
    if !config.is_subset_of(available) {
        let missing: Vec<_> = config
            .names()
            .into_iter()
            .filter(|name| !available.names().contains(name))
            .collect();
        return Err(GraphError::Config(format!(
            "{} does not provide {}",
            g.name(),
            missing.join(", ")
        )));
    }
    Ok(Masked {
        inner: g,
        caps: config,
    })
}

impl<'a, G: GraphContainer + ?Sized> Masked<'a, G> {
    /// Applies an ablation configuration; never fails because the mask is
    /// intersected with what the container offers.
    pub fn with_config(g: &'a G, config: ApiConfig) -> Self {
        Masked {
            inner: g,
            caps: config.restrict(g.capabilities()),
        }
    }

    pub fn inner(&self) -> &G {
        self.inner
    }
}

impl<G: GraphContainer + ?Sized> GraphContainer for Masked<'_, G> {
    fn num_vertices(&self) -> usize {
        self.inner.num_vertices()
    }

    fn map_neighbors(&self, v: VertexId, f: &mut dyn FnMut(VertexId)) {
        self.inner.map_neighbors(v, f)
    }

    fn capabilities(&self) -> Capabilities {
        self.caps
    }

    fn name(&self) -> &'static str {
        self.inner.name()
    }

    fn num_edges(&self) -> Option<usize> {
        self.caps.num_edges.then(|| self.inner.num_edges()).flatten()
    }

    fn degree(&self, v: VertexId) -> Option<usize> {
        self.caps.degree.then(|| self.inner.degree(v)).flatten()
    }

    fn map_neighbors_early_exit(
        &self,
        v: VertexId,
        f: &mut dyn FnMut(VertexId) -> bool,
    ) -> Option<bool> {
        if self.caps.map_early_exit {
            self.inner.map_neighbors_early_exit(v, f)
        } else {
            None
        }
    }

    fn parallel_map_neighbors(&self, v: VertexId, f: &(dyn Fn(VertexId) + Sync)) -> Option<()> {
        if self.caps.parallel_map {
            self.inner.parallel_map_neighbors(v, f)
        } else {
            None
        }
    }

    fn parallel_map_neighbors_early_exit(
        &self,
        v: VertexId,
        f: &(dyn Fn(VertexId) -> bool + Sync),
    ) -> Option<bool> {
        if self.caps.parallel_map_early_exit {
            self.inner.parallel_map_neighbors_early_exit(v, f)
        } else {
            None
        }
    }

    fn memory_bytes(&self) -> Option<usize> {
        self.inner.memory_bytes()
    }
}
