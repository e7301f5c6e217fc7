//! Resolution of algebra arguments and the record of everything a run
//! touched, so reports can inline it.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use centralic::algebra::{parse_algebra, AlgebraDocument, FiniteAlgebra};
use centralic::catalog;
use centralic::constructions::product;
use centralic::report::canonical_json;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputRecord {
    /// Names of the resolved algebras, keys of the document's `algebras`.
    pub names: Vec<String>,
    pub sha256: String,
}

/// Digest of the canonical document, so equal algebras digest equally
/// whatever file layout they came from.
pub fn digest(a: &FiniteAlgebra) -> String {
    let text = canonical_json(&AlgebraDocument::from_algebra(a));
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn digest_all(algebras: &[Arc<FiniteAlgebra>]) -> String {
    let mut h = Sha256::new();
    for a in algebras {
        h.update(digest(a).as_bytes());
    }
    hex::encode(h.finalize())
}

#[derive(Debug, Default)]
pub struct Session {
    /// Argument string -> algebras, when replaying a document.
    inlined: Option<BTreeMap<String, Vec<Arc<FiniteAlgebra>>>>,
    pub inputs: BTreeMap<String, InputRecord>,
    pub algebras: BTreeMap<String, Value>,
}

impl Session {
    pub fn new() -> Session {
        Session::default()
    }

    /// A session resolving arguments only through a document's inputs.
    pub fn replaying(
        inputs: &BTreeMap<String, InputRecord>,
        algebras: &BTreeMap<String, Arc<FiniteAlgebra>>,
    ) -> Result<Session> {
        let mut inlined = BTreeMap::new();
        for (arg, record) in inputs {
            let resolved = record
                .names
                .iter()
                .map(|n| {
                    algebras
                        .get(n)
                        .cloned()
                        .ok_or_else(|| anyhow!("input `{arg}` names `{n}`, which is not inlined"))
                })
                .collect::<Result<Vec<_>>>()?;
            if digest_all(&resolved) != record.sha256 {
                bail!("input `{arg}`: inlined algebras do not match the recorded digest");
            }
            inlined.insert(arg.clone(), resolved);
        }
        Ok(Session {
            inlined: Some(inlined),
            ..Session::default()
        })
    }

    /// Inlines `a` in the report. Distinct algebras must have distinct names.
    pub fn register(&mut self, a: &Arc<FiniteAlgebra>) -> Result<()> {
        let doc = AlgebraDocument::from_algebra(a).to_value();
        match self.algebras.get(a.name()) {
            Some(existing) if *existing != doc => {
                bail!("two different algebras are named `{}`", a.name())
            }
            Some(_) => Ok(()),
            None => {
                self.algebras.insert(a.name().to_string(), doc);
                Ok(())
            }
        }
    }

    fn record(&mut self, arg: &str, algebras: &[Arc<FiniteAlgebra>]) -> Result<()> {
        for a in algebras {
            self.register(a)?;
        }
        let record = InputRecord {
            names: algebras.iter().map(|a| a.name().to_string()).collect(),
            sha256: digest_all(algebras),
        };
        self.inputs.insert(arg.to_string(), record);
        Ok(())
    }

    /// Resolves one algebra argument; `like` supplies the signature for a
    /// bare `trivial`.
    pub fn algebra(&mut self, arg: &str, like: Option<&FiniteAlgebra>) -> Result<Arc<FiniteAlgebra>> {
        let a = match &self.inlined {
            Some(inlined) => match inlined.get(arg).map(Vec::as_slice) {
                Some([a]) => Arc::clone(a),
                _ => bail!("the report does not record input `{arg}`"),
            },
            None => resolve(arg, like)?,
        };
        self.record(arg, std::slice::from_ref(&a))?;
        Ok(a)
    }

    /// Resolves several arguments at once, giving bare `trivial` the
    /// signature of the first argument that is not.
    pub fn algebras<const N: usize>(&mut self, args: [&str; N]) -> Result<[Arc<FiniteAlgebra>; N]> {
        let anchor = match args.iter().find(|a| **a != "trivial") {
            Some(arg) => Some(self.algebra(arg, None)?),
            None => None,
        };
        let mut out = Vec::with_capacity(N);
        for arg in args {
            out.push(self.algebra(arg, anchor.as_deref())?);
        }
        Ok(out.try_into().expect("one algebra per argument"))
    }

    /// A test family: a catalog name, or a single algebra argument.
    pub fn family(&mut self, arg: &str) -> Result<Vec<Arc<FiniteAlgebra>>> {
        let family = match &self.inlined {
            Some(inlined) => inlined
                .get(arg)
                .cloned()
                .ok_or_else(|| anyhow!("the report does not record input `{arg}`"))?,
            None => match catalog::catalog(arg) {
                Ok(all) => all,
                Err(_) => vec![resolve(arg, None)?],
            },
        };
        self.record(arg, &family)?;
        Ok(family)
    }
}

fn builtin_named(name: &str) -> Option<Arc<FiniteAlgebra>> {
    catalog::full()
        .into_iter()
        .find(|a| a.name() == name)
        .or_else(|| match name {
            "trivial" | "all" => None,
            _ => catalog::catalog(name).ok().and_then(|mut v| v.pop()),
        })
}

fn resolve(arg: &str, like: Option<&FiniteAlgebra>) -> Result<Arc<FiniteAlgebra>> {
    if let Some((l, r)) = arg.split_once('*') {
        let (l, r) = (resolve(l, like)?, resolve(r, like)?);
        return Ok(product(&l, &r)?.prod);
    }
    if let Some(a) = builtin_named(arg) {
        return Ok(a);
    }
    if arg == "trivial" {
        let like = like.ok_or_else(|| anyhow!("`trivial` is ambiguous here; write `trivial:<algebra>`"))?;
        return Ok(FiniteAlgebra::trivial(like.signature()));
    }
    if let Some(other) = arg.strip_prefix("trivial:") {
        return Ok(FiniteAlgebra::trivial(resolve(other, like)?.signature()));
    }
    let path = Path::new(arg);
    if !path.is_file() {
        bail!("`{arg}` is neither a built-in algebra nor a readable file");
    }
    let text = std::fs::read_to_string(path).with_context(|| format!("{arg}: cannot read"))?;
    parse_algebra(&text).with_context(|| arg.to_string())
}
