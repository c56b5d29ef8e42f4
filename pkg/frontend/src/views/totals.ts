import type { ReportBundle } from '../types.js'

export type TotalsCallbacks = {
    onFunctionClick: (fid: string) => void
}

const CATEGORIES = [
    ['wins', 'win'],
    ['loses', 'lose'],
    ['ties', 'tie'],
    ['mixed', 'mixed'],
] as const

export function categoryMembers(bundle: ReportBundle, verdict: string): string[] {
    return Object.entries(bundle.per_function)
        .filter(([, entry]) => entry.verdict === verdict)
        .map(([fid]) => fid)
}

// Wins/Loses/Ties/Mixed counts straight out of bundle.totals; each row
// expands to the functions carrying that verdict.
export function renderTotalsView(
    bundle: ReportBundle,
    callbacks: TotalsCallbacks,
): HTMLElement {
    const doc = document
    const root = doc.createElement('section')
    root.className = 'totals-view'

    const heading = doc.createElement('h2')
    heading.className = 'totals-header'
    const count = Object.keys(bundle.per_function).length
    heading.textContent =
        `total performance: ${bundle.pair.label_a} (A) vs ${bundle.pair.label_b} (B), ` +
        `${String(count)} functions compared`
    heading.dataset.functionCount = String(count)
    root.appendChild(heading)

    const table = doc.createElement('table')
    table.className = 'totals-table'
    const body = table.createTBody()
    for (const [field, verdict] of CATEGORIES) {
        const row = body.insertRow()
        row.dataset.category = field
        const name = row.insertCell()
        name.textContent = field
        const value = row.insertCell()
        value.className = 'count'
        value.textContent = String(bundle.totals[field])
        const functions = row.insertCell()
        functions.className = 'category-functions'
        const list = doc.createElement('ul')
        for (const fid of categoryMembers(bundle, verdict)) {
            const item = doc.createElement('li')
            const link = doc.createElement('a')
            link.href = '#'
            link.dataset.function = fid
            link.textContent = fid
            link.addEventListener('click', event => {
                event.preventDefault()
                callbacks.onFunctionClick(fid)
            })
            item.appendChild(link)
            list.appendChild(item)
        }
        functions.appendChild(list)
    }
    root.appendChild(table)

    if (bundle.exclusions.length > 0) {
        const note = doc.createElement('div')
        note.className = 'exclusions'
        const caption = doc.createElement('p')
        caption.textContent = 'excluded from comparison:'
        note.appendChild(caption)
        const list = doc.createElement('ul')
        for (const exclusion of bundle.exclusions) {
            const item = doc.createElement('li')
            item.textContent = `${exclusion.function_id}: ${exclusion.reason}`
            list.appendChild(item)
        }
        note.appendChild(list)
        root.appendChild(note)
    }
    return root
}
