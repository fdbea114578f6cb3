//! The shipped verification batteries: object lists, their instances,
//! and the subcategory each battery localizes in. These are the fixed
//! inputs of the acceptance properties.

use crate::error::Result;
use crate::fields::FieldTable;
use crate::instance::Instance;
use crate::localize::{BasePointedSubcat, SubcatKind};
use crate::object::Object;
use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Clone)]
pub struct Battery {
    pub name: String,
    pub subcat: BasePointedSubcat,
    /// Object paired with the instance it is evaluated in (the ring
    /// battery configures base fields per ring).
    pub entries: Vec<(Instance, Object)>,
}

/// Finite sets with at most 4 elements.
pub fn set_battery() -> Result<Battery> {
    let objects = Instance::Set.objects_within(4)?;
    Ok(Battery {
        name: String::from("set"),
        subcat: BasePointedSubcat {
            kind: SubcatKind::SingletonSets,
            bound: 16,
        },
        entries: objects
            .into_iter()
            .map(|o| (Instance::Set, o))
            .collect(),
    })
}

/// Abelian groups of order at most 24.
pub fn ab_battery() -> Result<Battery> {
    let objects = Instance::Ab.objects_within(24)?;
    Ok(Battery {
        name: String::from("ab"),
        subcat: BasePointedSubcat {
            kind: SubcatKind::PrimeCyclic,
            bound: 24,
        },
        entries: objects.into_iter().map(|o| (Instance::Ab, o)).collect(),
    })
}

/// Spaces of dimension at most 3 over F_q.
pub fn vect_battery(q: u64) -> Result<Battery> {
    let field = FieldTable::default_for(q)?;
    let bound = q.pow(3);
    let instance = Instance::Vect(field);
    let objects = instance.objects_within(bound)?;
    Ok(Battery {
        name: alloc::format!("vect-f{}", q),
        subcat: BasePointedSubcat {
            kind: SubcatKind::Spanned,
            bound,
        },
        entries: objects
            .into_iter()
            .map(|o| (instance.clone(), o))
            .collect(),
    })
}

/// Commutative rings with at most `bound` elements, each evaluated with
/// its own residue fields as the base.
pub fn ring_battery(bound: u64) -> Result<Battery> {
    let objects = Instance::ring_default().objects_within(bound)?;
    Ok(Battery {
        name: String::from("ring"),
        subcat: BasePointedSubcat {
            kind: SubcatKind::LocalRings,
            bound,
        },
        entries: objects
            .into_iter()
            .map(|o| {
                let inst = Instance::ring_for(o.as_ring());
                (inst, o)
            })
            .collect(),
    })
}

/// All shipped batteries at the acceptance bounds.
pub fn shipped() -> Result<Vec<Battery>> {
    Ok(alloc::vec![
        set_battery()?,
        ab_battery()?,
        vect_battery(2)?,
        vect_battery(3)?,
        ring_battery(64)?,
    ])
}
