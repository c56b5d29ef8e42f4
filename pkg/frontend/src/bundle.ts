import type { ReportBundle } from './types.js'

export const SUPPORTED_SCHEMA_VERSION = '1'

export class SchemaMismatch extends Error {
    constructor(message: string) {
        super(message)
        this.name = 'SchemaMismatch'
    }
}

export class FetchFailure extends Error {
    constructor(message: string) {
        super(message)
        this.name = 'FetchFailure'
    }
}

function requireField(doc: Record<string, unknown>, field: string): unknown {
    if (!(field in doc)) {
        throw new SchemaMismatch(`report bundle is missing required field "${field}"`)
    }
    return doc[field]
}

// Parse and validate a decoded report.json document. All referential
// integrity problems surface here, before anything tries to render.
export function parseBundle(doc: unknown): ReportBundle {
    if (typeof doc !== 'object' || doc === null || Array.isArray(doc)) {
        throw new SchemaMismatch('report bundle is not a JSON object')
    }
    const raw = doc as Record<string, unknown>
    const version = requireField(raw, 'schema_version')
    if (version !== SUPPORTED_SCHEMA_VERSION) {
        throw new SchemaMismatch(
            `unsupported schema_version "${String(version)}" ` +
            `(this dashboard supports "${SUPPORTED_SCHEMA_VERSION}")`,
        )
    }
    for (const field of ['fingerprint', 'pair', 'alpha', 'budget', 'metrics',
                         'per_function', 'histograms', 'totals', 'exclusions']) {
        requireField(raw, field)
    }

    const bundle = raw as ReportBundle
    const functionIds = new Set(Object.keys(bundle.per_function))

    for (const metric of bundle.metrics) {
        const hist = bundle.histograms[metric]
        if (!hist) {
            throw new SchemaMismatch(`metric "${metric}" has no histogram`)
        }
        for (const [sideName, bins] of [['a_bins', hist.a_bins], ['b_bins', hist.b_bins]] as const) {
            if (!Array.isArray(bins) || bins.length !== hist.edges.length - 1) {
                throw new SchemaMismatch(
                    `histogram "${metric}" ${sideName}: expected ${hist.edges.length - 1} bins`,
                )
            }
            for (const bin of bins) {
                for (const id of bin) {
                    if (!functionIds.has(id)) {
                        throw new SchemaMismatch(
                            `histogram "${metric}" references unknown function "${id}"`,
                        )
                    }
                }
            }
        }
    }

    for (const [fid, entry] of Object.entries(bundle.per_function)) {
        for (const part of ['traces', 'runs', 'outcomes'] as const) {
            if (typeof entry[part] !== 'object' || entry[part] === null) {
                throw new SchemaMismatch(`function "${fid}" is missing ${part}`)
            }
        }
        for (const metric of bundle.metrics) {
            if (!(metric in entry.outcomes)) {
                throw new SchemaMismatch(`function "${fid}" has no outcome for "${metric}"`)
            }
        }
    }

    return bundle
}

export async function loadBundle(url: string): Promise<ReportBundle> {
    let response: Response
    try {
        response = await fetch(url)
    } catch (err) {
        throw new FetchFailure(`could not fetch ${url}: ${String(err)}`)
    }
    if (!response.ok) {
        throw new FetchFailure(`could not fetch ${url}: HTTP ${response.status}`)
    }
    let doc: unknown
    try {
        doc = await response.json()
    } catch (err) {
        throw new FetchFailure(`${url} is not valid JSON: ${String(err)}`)
    }
    return parseBundle(doc)
}
