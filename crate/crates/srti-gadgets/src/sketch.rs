use srti_graph::TreeCutDecomposition;

/// A tree-cut decomposition under construction, in emitter ids.
#[derive(Clone, Debug, Default)]
pub struct Sketch {
    parent: Vec<Option<usize>>,
    bags: Vec<Vec<usize>>,
}

impl Sketch {
    pub fn root(bag: Vec<usize>) -> Sketch {
        Sketch { parent: vec![None], bags: vec![bag] }
    }

    pub fn node(&mut self, parent: usize, bag: Vec<usize>) -> usize {
        self.parent.push(Some(parent));
        self.bags.push(bag);
        self.parent.len() - 1
    }

    pub fn finish(self, ids: &[usize]) -> TreeCutDecomposition {
        let bags = self
            .bags
            .into_iter()
            .map(|b| b.into_iter().map(|v| ids[v]).collect())
            .collect();
        TreeCutDecomposition::new(self.parent, bags)
    }
}
